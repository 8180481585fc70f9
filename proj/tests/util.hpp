#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "emg/grammar.hpp"

namespace emg::test {

inline std::string data_path(const std::string& name) {
    return std::string(TEST_DATA_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Grammar fixture(const std::string& name) {
    return load_grammar(slurp(data_path(name)));
}

inline std::vector<std::string> words(const std::string& sentence) {
    std::vector<std::string> out;
    std::istringstream ss(sentence);
    std::string w;
    while (ss >> w)
        out.push_back(w);
    return out;
}

} // namespace emg::test
