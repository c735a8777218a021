#ifndef SIDCERT_SETFUN_HPP
#define SIDCERT_SETFUN_HPP

#include <map>
#include <utility>
#include <vector>

#include "sidcert/ground.hpp"
#include "sidcert/rational.hpp"

namespace sidcert {

/**
 * A rational-valued function on the subsets of a ground set, stored sparsely.
 * Zero entries are never kept, so equality of the entry maps is equality of
 * the functions.
 */
class SetFunction {
public:
    SetFunction() = default;
    explicit SetFunction(GroundSet ground) : ground_(std::move(ground)) {}

    const GroundSet& ground() const { return ground_; }
    const std::map<Subset, Rational>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    Rational at(Subset s) const {
        ground_.check_mask(s);
        auto it = entries_.find(s);
        return it == entries_.end() ? Rational(0) : it->second;
    }

    void add(Subset s, const Rational& c) {
        ground_.check_mask(s);
        if (c == 0) return;
        auto [it, inserted] = entries_.emplace(s, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) entries_.erase(it);
        }
    }

    void set(Subset s, const Rational& c) {
        ground_.check_mask(s);
        if (c == 0)
            entries_.erase(s);
        else
            entries_[s] = c;
    }

    SetFunction& operator+=(const SetFunction& o) {
        require_same_ground(o);
        for (const auto& [s, c] : o.entries_) add(s, c);
        return *this;
    }

    SetFunction& operator-=(const SetFunction& o) {
        require_same_ground(o);
        for (const auto& [s, c] : o.entries_) add(s, -c);
        return *this;
    }

    SetFunction& operator*=(const Rational& c) {
        if (c == 0) {
            entries_.clear();
        } else {
            for (auto& [s, v] : entries_) v *= c;
        }
        return *this;
    }

    friend SetFunction operator+(SetFunction a, const SetFunction& b) { return a += b; }
    friend SetFunction operator-(SetFunction a, const SetFunction& b) { return a -= b; }
    friend SetFunction operator*(const Rational& c, SetFunction f) { return f *= c; }

    bool operator==(const SetFunction& o) const {
        return ground_ == o.ground_ && entries_ == o.entries_;
    }
    bool operator!=(const SetFunction& o) const { return !(*this == o); }

    void require_same_ground(const SetFunction& o) const {
        if (ground_ != o.ground_)
            throw GroundMismatchError("set functions live over different ground sets");
    }

private:
    GroundSet ground_;
    std::map<Subset, Rational> entries_;
};

/** Indicator 1_A. */
inline SetFunction indicator(const GroundSet& g, Subset a) {
    SetFunction f(g);
    f.add(a, 1);
    return f;
}

/** t_{A,B} = 1_{A∪B} - 1_A - 1_B + 1_{A∩B}; identically zero when nested. */
inline SetFunction t_vector(const GroundSet& g, Subset a, Subset b) {
    SetFunction f(g);
    f.add(a | b, 1);
    f.add(a, -1);
    f.add(b, -1);
    f.add(a & b, 1);
    return f;
}

/** Σ coeff_i · f_i over a common ground set. */
inline SetFunction linear_combine(const std::vector<std::pair<Rational, SetFunction>>& terms) {
    if (terms.empty()) throw ParameterError("linear_combine: no terms");
    SetFunction out(terms.front().second.ground());
    for (const auto& [c, f] : terms) {
        out.require_same_ground(f);
        for (const auto& [s, v] : f.entries()) out.add(s, c * v);
    }
    return out;
}

/** Pointwise inner product Σ_S f(S)·g(S). */
inline Rational inner(const SetFunction& f, const SetFunction& g) {
    f.require_same_ground(g);
    const auto& a = f.entries();
    const auto& b = g.entries();
    Rational out(0);
    if (a.size() <= b.size()) {
        for (const auto& [s, v] : a) {
            auto it = b.find(s);
            if (it != b.end()) out += v * it->second;
        }
    } else {
        return inner(g, f);
    }
    return out;
}

} // namespace sidcert

#endif
