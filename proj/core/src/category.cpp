#include "emg/category.hpp"

namespace emg {

namespace {
bool segment_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_';
}
} // namespace

Category::Category(const std::string& dotted) {
    std::string seg;
    for (char c : dotted) {
        if (c == '.') {
            segments.push_back(seg);
            seg.clear();
        } else {
            seg.push_back(c);
        }
    }
    segments.push_back(seg);
}

std::string Category::str() const {
    std::string out;
    for (size_t i = 0; i < segments.size(); ++i) {
        if (i) out.push_back('.');
        out += segments[i];
    }
    return out;
}

bool refines(const Category& a, const Category& b) {
    if (b.segments.size() > a.segments.size()) return false;
    for (size_t i = 0; i < b.segments.size(); ++i)
        if (a.segments[i] != b.segments[i]) return false;
    return true;
}

bool valid_category(const std::string& dotted) {
    if (dotted.empty() || dotted.front() == '.' || dotted.back() == '.') return false;
    bool prev_dot = true;
    for (char c : dotted) {
        if (c == '.') {
            if (prev_dot) return false;
            prev_dot = true;
        } else {
            if (!segment_char(c)) return false;
            prev_dot = false;
        }
    }
    return true;
}

} // namespace emg
