#include "emg/features.hpp"

#include <algorithm>

namespace emg {

void AgrSet::put(AgrFeature f) {
    auto it = std::lower_bound(feats_.begin(), feats_.end(), f.attr,
                               [](const AgrFeature& x, const std::string& a) { return x.attr < a; });
    if (it != feats_.end() && it->attr == f.attr) {
        if (f.value) it->value = std::move(f.value);
        return;
    }
    feats_.insert(it, std::move(f));
}

const AgrFeature* AgrSet::find(const std::string& attr) const {
    auto it = std::lower_bound(feats_.begin(), feats_.end(), attr,
                               [](const AgrFeature& x, const std::string& a) { return x.attr < a; });
    if (it != feats_.end() && it->attr == attr) return &*it;
    return nullptr;
}

std::string AgrSet::str() const {
    std::string out = "{";
    for (size_t i = 0; i < feats_.size(); ++i) {
        if (i) out += ", ";
        out += feats_[i].str();
    }
    return out + "}";
}

namespace {
// Most specific of two features for the same attribute; nullopt on clash.
std::optional<AgrFeature> join(const AgrFeature& x, const AgrFeature& y) {
    if (!x.value) return y;
    if (!y.value) return x;
    if (*x.value == *y.value) return x;
    return std::nullopt;
}
} // namespace

std::optional<AgrSet> unify(const AgrSet& a, const AgrSet& b) {
    AgrSet out = a;
    for (const auto& f : b.items()) {
        if (const AgrFeature* have = out.find(f.attr)) {
            auto j = join(*have, f);
            if (!j) return std::nullopt;
            out.put(*j);
        } else {
            out.put(f);
        }
    }
    return out;
}

std::optional<std::pair<AgrSet, AgrSet>> unify_restricted(
    const AgrSet& a, const AgrSet& b, const std::set<std::string>& attrs) {
    AgrSet ra = a, rb = b;
    for (const auto& attr : attrs) {
        const AgrFeature* fa = a.find(attr);
        const AgrFeature* fb = b.find(attr);
        if (fa && fb) {
            auto j = join(*fa, *fb);
            if (!j) return std::nullopt;
            ra.put(*j);
            rb.put(*j);
        } else if (fa) {
            rb.put(*fa);
        } else if (fb) {
            ra.put(*fb);
        }
    }
    return std::make_pair(std::move(ra), std::move(rb));
}

} // namespace emg
