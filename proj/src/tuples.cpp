#include "dioph/tuples.hpp"

#include <algorithm>
#include <set>

namespace dioph {

bool is_diophantine_tuple(const std::vector<Integer>& xs) {
    std::set<Integer> distinct(xs.begin(), xs.end());
    if (distinct.size() != xs.size()) throw std::domain_error("is_diophantine_tuple: duplicate elements");
    for (const auto& x : xs) {
        if (x <= 0) throw std::domain_error("is_diophantine_tuple: elements must be positive");
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            if (!is_square(xs[i] * xs[j] + 1)) return false;
        }
    }
    return true;
}

namespace {

void require_triple(const Integer& a, const Integer& b, const Integer& c, const char* who) {
    if (!is_diophantine_tuple({a, b, c})) throw std::domain_error(std::string(who) + ": not a Diophantine triple");
}

}  // namespace

bool is_regular_triple(const Integer& a, const Integer& b, const Integer& c) {
    require_triple(a, b, c, "is_regular_triple");
    Integer lhs = (c - b - a) * (c - b - a);
    return lhs == 4 * (a * b + 1);
}

bool is_regular_quadruple(const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
    std::vector<Integer> q{a, b, c, d};
    if (!is_diophantine_tuple(q)) throw std::domain_error("is_regular_quadruple: not a Diophantine quadruple");
    std::sort(q.begin(), q.end());
    Integer lhs = (q[3] + q[2] - q[0] - q[1]) * (q[3] + q[2] - q[0] - q[1]);
    return lhs == 4 * (q[0] * q[1] + 1) * (q[2] * q[3] + 1);
}

ExtensionPair d_plus_minus(const Integer& a, const Integer& b, const Integer& c) {
    require_triple(a, b, c, "d_plus_minus");
    Integer r = *isqrt_exact(a * b + 1);
    Integer s = *isqrt_exact(a * c + 1);
    Integer t = *isqrt_exact(b * c + 1);
    Integer base = a + b + c;
    ExtensionPair out{base + 2 * (a * b * c + r * s * t), base + 2 * (a * b * c - r * s * t)};
    for (const Integer& d : {out.d_plus, out.d_minus}) {
        Integer v1 = a * t + r * s, w1 = a * t - r * s;
        Integer v2 = b * s + r * t, w2 = b * s - r * t;
        Integer v3 = c * r + s * t, w3 = c * r - s * t;
        const Integer& x1 = d == out.d_plus ? v1 : w1;
        const Integer& x2 = d == out.d_plus ? v2 : w2;
        const Integer& x3 = d == out.d_plus ? v3 : w3;
        if (a * d + 1 != x1 * x1 || b * d + 1 != x2 * x2 || c * d + 1 != x3 * x3)
            throw std::logic_error("d_plus_minus: product identities failed");
    }
    return out;
}

Pair2B pair_from_k(const Integer& k) {
    if (k < 1) throw std::domain_error("pair_from_k: k must be >= 1");
    Pair2B p{k, 2 * k * (k + 1), 2 * k + 1};
    if (2 * p.b + 1 != p.r * p.r) throw std::logic_error("pair_from_k: 2b + 1 != r^2");
    return p;
}

std::vector<Integer> TripleFamily::triple() const {
    std::vector<Integer> t{2, pair.b, c};
    std::sort(t.begin(), t.end());
    return t;
}

TripleFamily c_family(const Pair2B& pair, int nu, int sign) {
    if (nu < 1 || nu > 3) throw std::domain_error("c_family: nu must be 1, 2 or 3");
    if (sign != 1 && sign != -1) throw std::domain_error("c_family: sign must be +-1");
    const Integer& b = pair.b;
    const Integer& r = pair.r;
    Integer sg = sign;

    Integer c;
    switch (nu) {
        case 1:
            c = 2 + b + sg * 2 * r;
            break;
        case 2:
            c = 8 * b * (2 + b + sg * 2 * r) + 4 * (2 + b + sg * r);
            break;
        default:
            c = 64 * b * b * (2 + b + sg * 2 * r) + 16 * b * (6 + 3 * b + sg * 4 * r) +
                3 * (6 + 3 * b + sg * 2 * r);
            break;
    }
    if (c <= 0) throw std::domain_error("c_family: degenerate c <= 0");
    if (c == b) throw std::domain_error("c_family: c collides with b");

    // Cross-check against the s recurrence: s0 = 1, s1 = r + 2*sign,
    // s_{i+2} = 2r s_{i+1} - s_i, and c = (s_nu^2 - 1)/2.
    Integer s_prev = 1, s_cur = r + sg * 2;
    for (int i = 1; i < nu; ++i) {
        Integer nxt = 2 * r * s_cur - s_prev;
        s_prev = s_cur;
        s_cur = nxt;
    }
    if ((s_cur * s_cur - 1) / 2 != c) throw std::logic_error("c_family: closed form disagrees with recurrence");

    auto s = isqrt_exact(2 * c + 1);
    auto t = isqrt_exact(b * c + 1);
    if (!s || !t) throw std::logic_error("c_family: 2c+1 or bc+1 not a square");
    return TripleFamily{pair, nu, sign, c, *s, *t};
}

std::vector<std::vector<Integer>> extend_pair_regular(const Integer& a, const Integer& b) {
    auto r = isqrt_exact(a * b + 1);
    if (!r || a <= 0 || b <= 0 || a == b) throw std::domain_error("extend_pair_regular: not a Diophantine pair");
    std::vector<std::vector<Integer>> out;
    for (int sign : {1, -1}) {
        Integer c = a + b + sign * 2 * (*r);
        // 4r(a - r)(b - r) is negative for the minus sign (a < r < b); the
        // quadruple element is its absolute value.
        Integer d = abs(4 * (*r) * (a + sign * (*r)) * (b + sign * (*r)));
        if (c <= 0 || d <= 0) continue;  // |a - b| = 2 degenerates the minus branch
        std::vector<Integer> quad{a, b, c, d};
        std::sort(quad.begin(), quad.end());
        if (std::adjacent_find(quad.begin(), quad.end()) != quad.end()) continue;
        if (!is_diophantine_tuple(quad) || !is_regular_quadruple(quad[0], quad[1], quad[2], quad[3]))
            throw std::logic_error("extend_pair_regular: produced quadruple fails validation");
        out.push_back(quad);
    }
    return out;
}

bool pyramidal_identity(const Integer& k) {
    if (k < 1) return false;
    Pair2B p = pair_from_k(k);
    Integer lhs_num = p.b * p.r;  // divided by 12 below
    Integer rhs_num = k * (k + 1) * (2 * k + 1);  // divided by 6
    if (lhs_num % 12 != 0 || rhs_num % 6 != 0) return false;
    return lhs_num / 12 == rhs_num / 6;
}

std::vector<Extension> brute_force_extensions(const Integer& a, const Integer& b, const Integer& c,
                                              const Integer& d_max) {
    require_triple(a, b, c, "brute_force_extensions");
    if (d_max < 1) throw std::domain_error("brute_force_extensions: d_max must be >= 1");

    Integer lo = std::max({a, b, c});
    std::vector<Extension> out;
    if (d_max <= lo) return out;

    // From a d + 1 = x^2 and c d + 1 = z^2: (a z)^2 - a c x^2 = a(a - c).
    // Enumerate that Pellian up to the x implied by d_max, then filter on
    // divisibility and the remaining b d + 1 square condition.
    Integer D = a * c;
    Integer N = a * (a - c);
    Integer x_max = isqrt_floor(a * d_max + 1) + 1;
    PellEquation eq = PellEquation::make(D, N);

    std::set<Integer> found;
    for (const auto& tagged : enumerate_solutions(eq, x_max)) {
        const Integer& Z = tagged.sol.t;  // a*z
        const Integer& x = tagged.sol.s;
        if (Z % a != 0) continue;
        Integer z = Z / a;
        Integer num = z * z - 1;
        if (num % c != 0) continue;
        Integer d = num / c;
        if (d <= lo || d > d_max) continue;
        if ((x * x - 1) % a != 0 || (x * x - 1) / a != d) continue;
        if (!is_square(b * d + 1)) continue;
        found.insert(d);
    }
    for (const auto& d : found) {
        out.push_back({d, is_regular_quadruple(a, b, c, d)});
    }
    return out;
}

}  // namespace dioph
