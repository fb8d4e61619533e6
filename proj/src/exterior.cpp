#include "cuphom/exterior.hpp"
#include "cuphom/errors.hpp"

#include <bit>

namespace cuphom {

int shuffle_sign(Mask t, Mask r) {
    // Count pairs (x in t, y in r) with x > y.
    int inv = 0;
    Mask tt = t;
    while (tt) {
        Mask lowest = tt & (Mask)(-(std::int32_t)tt);
        tt &= tt - 1;
        inv += std::popcount((std::uint32_t)(r & (lowest - 1)));
    }
    return (inv & 1) ? -1 : 1;
}

void Multivector::add_term(Mask s, long long c) {
    if (ring == Ring::F2) c = ((c % 2) + 2) % 2;
    if (c == 0) return;
    auto it = coeffs.find(s);
    if (it == coeffs.end()) {
        coeffs.emplace(s, c);
        return;
    }
    it->second += c;
    if (ring == Ring::F2) it->second = ((it->second % 2) + 2) % 2;
    if (it->second == 0) coeffs.erase(it);
}

long long Multivector::coeff(Mask s) const {
    auto it = coeffs.find(s);
    return it == coeffs.end() ? 0 : it->second;
}

Multivector Multivector::basis(int ell, Ring ring, Mask s) {
    Multivector v(ell, ring);
    v.add_term(s, 1);
    return v;
}

Multivector add(const Multivector& a, const Multivector& b) {
    if (a.ell != b.ell || a.ring != b.ring)
        throw SemanticError("multivector add: mismatched ell or ring");
    Multivector out = a;
    for (const auto& [s, c] : b.coeffs) out.add_term(s, c);
    return out;
}

Multivector reduce_mod2(const Multivector& a) {
    Multivector out(a.ell, Ring::F2);
    for (const auto& [s, c] : a.coeffs) out.add_term(s, c);
    return out;
}

bool operator==(const Multivector& a, const Multivector& b) {
    return a.ell == b.ell && a.ring == b.ring && a.coeffs == b.coeffs;
}

void AltForm::add_term(Mask t, long long c) {
    if (c == 0) return;
    auto it = coeff.find(t);
    if (it == coeff.end()) {
        coeff.emplace(t, c);
        return;
    }
    it->second += c;
    if (it->second == 0) coeff.erase(it);
}

long long AltForm::get(Mask t) const {
    auto it = coeff.find(t);
    return it == coeff.end() ? 0 : it->second;
}

Multivector wedge(const Multivector& a, const Multivector& b) {
    if (a.ell != b.ell || a.ring != b.ring)
        throw SemanticError("wedge: mismatched ell or ring");
    Multivector out(a.ell, a.ring);
    for (const auto& [s, cs] : a.coeffs)
        for (const auto& [t, ct] : b.coeffs) {
            if (s & t) continue;
            long long c = cs * ct;
            if (a.ring != Ring::F2) c *= shuffle_sign(s, t);
            out.add_term(s | t, c);
        }
    return out;
}

Multivector contract(const AltForm& f, const Multivector& x) {
    if (f.ell != x.ell) throw SemanticError("contract: mismatched ell");
    Multivector out(x.ell, x.ring);
    for (const auto& [s, cs] : x.coeffs)
        for (const auto& [t, ct] : f.coeff) {
            if ((s & t) != t) continue;
            Mask rest = s & ~t;
            long long c = cs * ct;
            if (x.ring != Ring::F2) c *= shuffle_sign(t, rest);
            out.add_term(rest, c);
        }
    return out;
}

AltForm form_wedge(const AltForm& a, const AltForm& b) {
    if (a.ell != b.ell) throw SemanticError("form_wedge: mismatched ell");
    AltForm out;
    out.ell = a.ell;
    out.k = a.k + b.k;
    for (const auto& [t, ct] : a.coeff)
        for (const auto& [u, cu] : b.coeff) {
            if (t & u) continue;
            out.add_term(t | u, shuffle_sign(t, u) * ct * cu);
        }
    return out;
}

GradedPiece degree_basis(int ell, int degree) {
    GradedPiece g;
    g.degree = degree;
    if (degree < 0 || degree > ell) return g;
    for (Mask s = 0; s < (Mask(1) << ell); ++s)
        if (std::popcount((std::uint32_t)s) == degree) g.basis.push_back(s);
    return g;
}

} // namespace cuphom
