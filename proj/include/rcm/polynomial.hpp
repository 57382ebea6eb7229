#pragma once

#include <map>
#include <string>
#include <utility>

#include "json.hpp"

#include "rcm/number.hpp"

namespace rcm {

/// Exact integer polynomial in two variables. Degree pairs map to non-zero
/// coefficients; zero terms are never stored.
class BivariatePolynomial {
public:
    using Degrees = std::pair<int, int>;
    using Terms = std::map<Degrees, Integer>;

    BivariatePolynomial() = default;
    explicit BivariatePolynomial(const Integer& constant) { add_term(0, 0, constant); }
    explicit BivariatePolynomial(long constant) : BivariatePolynomial(Integer(constant)) {}

    static BivariatePolynomial monomial(int i, int j, const Integer& c = 1) {
        BivariatePolynomial p;
        p.add_term(i, j, c);
        return p;
    }
    static BivariatePolynomial x() { return monomial(1, 0); }
    static BivariatePolynomial y() { return monomial(0, 1); }

    void add_term(int i, int j, const Integer& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace({i, j}, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Integer coefficient(int i, int j) const {
        auto it = terms_.find({i, j});
        return it == terms_.end() ? Integer(0) : it->second;
    }

    int degree_x() const {
        int d = -1;
        for (const auto& [deg, c] : terms_) d = std::max(d, deg.first);
        return d;
    }
    int degree_y() const {
        int d = -1;
        for (const auto& [deg, c] : terms_) d = std::max(d, deg.second);
        return d;
    }

    BivariatePolynomial& operator+=(const BivariatePolynomial& o) {
        for (const auto& [deg, c] : o.terms_) add_term(deg.first, deg.second, c);
        return *this;
    }
    BivariatePolynomial& operator-=(const BivariatePolynomial& o) {
        for (const auto& [deg, c] : o.terms_) add_term(deg.first, deg.second, -c);
        return *this;
    }
    friend BivariatePolynomial operator+(BivariatePolynomial a, const BivariatePolynomial& b) { return a += b; }
    friend BivariatePolynomial operator-(BivariatePolynomial a, const BivariatePolynomial& b) { return a -= b; }
    friend BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b) {
        BivariatePolynomial out;
        for (const auto& [da, ca] : a.terms_)
            for (const auto& [db, cb] : b.terms_) out.add_term(da.first + db.first, da.second + db.second, ca * cb);
        return out;
    }
    BivariatePolynomial& operator*=(const BivariatePolynomial& o) { return *this = *this * o; }
    friend BivariatePolynomial operator*(const Integer& s, const BivariatePolynomial& p) {
        BivariatePolynomial out;
        for (const auto& [d, c] : p.terms_) out.add_term(d.first, d.second, s * c);
        return out;
    }

    /// Multiplies by x^i y^j.
    BivariatePolynomial shifted(int i, int j) const {
        BivariatePolynomial out;
        for (const auto& [d, c] : terms_) out.terms_.emplace(Degrees{d.first + i, d.second + j}, c);
        return out;
    }

    friend bool operator==(const BivariatePolynomial&, const BivariatePolynomial&) = default;

    template <class Scalar>
    Scalar evaluate(const Scalar& xv, const Scalar& yv) const {
        // Powers are cached per degree; polynomials here are small.
        std::map<int, Scalar> px, py;
        auto power = [](std::map<int, Scalar>& cache, const Scalar& base, int e) -> const Scalar& {
            auto it = cache.find(e);
            if (it != cache.end()) return it->second;
            Scalar r = Scalar(1);
            for (int k = 0; k < e; ++k) r *= base;
            return cache.emplace(e, r).first->second;
        };
        Scalar sum = Scalar(0);
        for (const auto& [d, c] : terms_) {
            Scalar term = coefficient_as<Scalar>(c);
            term *= power(px, xv, d.first);
            term *= power(py, yv, d.second);
            sum += term;
        }
        return sum;
    }

    std::string to_string(const char* xname = "x", const char* yname = "y") const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        // Highest total degree first reads naturally.
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [d, c] = *it;
            Integer mag = c < 0 ? Integer(-c) : c;
            if (first) {
                if (c < 0) s += "-";
            } else {
                s += c < 0 ? " - " : " + ";
            }
            first = false;
            bool constant = d.first == 0 && d.second == 0;
            if (mag != 1 || constant) s += mag.get_str();
            auto var = [&](const char* name, int e) {
                if (e == 0) return;
                s += name;
                if (e > 1) s += "^" + std::to_string(e);
            };
            var(xname, d.first);
            var(yname, d.second);
        }
        return s;
    }

private:
    template <class Scalar>
    static Scalar coefficient_as(const Integer& c) {
        if constexpr (std::is_floating_point_v<Scalar>) {
            return static_cast<Scalar>(c.get_d());
        } else {
            return Scalar(c);
        }
    }

    Terms terms_;
};

/// Evaluates at exact rationals.
inline Rational eval_poly(const BivariatePolynomial& p, const Rational& x, const Rational& y) {
    return p.evaluate<Rational>(x, y);
}

inline void to_json(nlohmann::json& j, const BivariatePolynomial& p) {
    auto terms = nlohmann::json::array();
    for (const auto& [d, c] : p.terms()) terms.push_back({{"i", d.first}, {"j", d.second}, {"c", c.get_str()}});
    j = nlohmann::json{{"terms", terms}};
}

inline void from_json(const nlohmann::json& j, BivariatePolynomial& p) {
    p = BivariatePolynomial();
    for (const auto& t : j.at("terms")) {
        Integer c;
        if (c.set_str(t.at("c").get<std::string>(), 10) != 0) throw UsageError("bad polynomial coefficient");
        p.add_term(t.at("i").get<int>(), t.at("j").get<int>(), c);
    }
}

} // namespace rcm
