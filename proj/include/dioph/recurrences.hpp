// Second-order integer recurrences and the machinery around the equation
// x = p_l = V_m: the admissible fundamental-solution cases, the intersection
// search, and exhaustive verification of the ordering chains that force
// Delta = l - lambda - nu*m to vanish only at regular extensions.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dioph/integer.hpp"
#include "dioph/pell.hpp"
#include "dioph/tuples.hpp"

namespace dioph {

// u_{i+2} = A u_{i+1} + B u_i with a memoized prefix.
class SecondOrderSeq {
public:
    SecondOrderSeq(Integer u0, Integer u1, Integer A, Integer B);

    const Integer& at(std::size_t i);
    const Integer& kernel_a() const { return A_; }
    const Integer& kernel_b() const { return B_; }

private:
    Integer A_, B_;
    std::vector<Integer> memo_;
};

// Sequence of odd-indexed terms: kernel (A^2 + 2B, -B^2), starting u1, u3.
SecondOrderSeq halve_odd_indices(SecondOrderSeq seq);

// Solution-generating sequences of the pair equation 2t^2 - b s^2 = 2 - b:
// t0 = sign, t1 = b + sign*r; s0 = 1, s1 = r + 2*sign; kernel (2r, -1).
SecondOrderSeq pair_t_seq(const Pair2B& pair, int sign);
SecondOrderSeq pair_s_seq(const Pair2B& pair, int sign);

// Coefficients of (r + sqrt(2b))^nu = T_nu + U_nu sqrt(2b).
SecondOrderSeq unit_T_seq(const Pair2B& pair);
SecondOrderSeq unit_U_seq(const Pair2B& pair);

// One admissible fundamental-solution combination for the system attached to
// a triple {2, b, c}. Exactly two shapes occur: the even-parity one with
// z0 = +-1 and the odd-parity one with z0 = +-t, y2 = +-1.
struct FundamentalCase {
    bool even_parity;
    Integer z0, x0, y2, x2;
    int lambda;  // 0 even; sign(z0) odd

    std::string label() const;
};

// The full six-case grid for a family.
std::vector<FundamentalCase> lemma_cases(const TripleFamily& fam);

enum class Y2Justification { CongruenceArgument, OracleEnumeration };

struct CaseClassification {
    std::vector<FundamentalCase> cases;
    // Fundamental classes of the y-side equation beyond (+-1, 1); nonempty
    // only in the oracle regime for pairs of the k = g^2 - 2 shape.
    std::vector<PellSolution> extra_y_classes;
    Y2Justification justification;
};

// Fundamental solutions (y2, x2) of 2y^2 - b x^2 = 2 - b. Above b = 4000 the
// congruence classification applies; below, exhaustive class enumeration is
// used and flagged.
CaseClassification classify_y2(const Pair2B& pair, const TripleFamily& fam);

struct CaseSequences {
    SecondOrderSeq V;  // V0 = x0, V1 = s x0 + 2 z0, kernel (2s, -1)
    SecondOrderSeq p;  // p0 = x2, p1 = r x2 + 2 y2, kernel (2r, -1)
};

CaseSequences build_case_sequences(const TripleFamily& fam, const FundamentalCase& fc);

// y-side and z-side companions, used by the congruence scheme and endgame.
SecondOrderSeq z_side_v_seq(const TripleFamily& fam, const Integer& z0, const Integer& x0);
SecondOrderSeq z_side_w_seq(const TripleFamily& fam, const Integer& z1, const Integer& y1);
SecondOrderSeq y_side_W_seq(const TripleFamily& fam, const Integer& z1, const Integer& y1);
SecondOrderSeq y_side_q_seq(const Pair2B& pair, const Integer& y2, const Integer& x2);

Integer delta_of(const Integer& l, int lambda, int nu, const Integer& m);

struct IntersectionSolution {
    Integer m, l, x, delta;
};

// All coincidences V_m = p_l with m <= m_max, parity-filtered per case
// (even case: m and l even; odd case: m odd).
std::vector<IntersectionSolution> solve_intersection(CaseSequences& seqs, const FundamentalCase& fc,
                                                     int nu, long m_max);

struct OrderingWitness {
    long m;
    std::string detail;
};

struct DeltaInequalityReport {
    bool all_hold = true;
    std::vector<OrderingWitness> regular_equalities;
    std::vector<OrderingWitness> violations;
};

// Term-by-term verification, up to m_max, of the telescoped p identity, the
// strict V/p orderings of each case, and the nu = 3 sandwich bounds. The
// known regular coincidences are reported separately, any other failure is a
// violation (it would falsify the implementation, not the theory).
DeltaInequalityReport verify_delta_inequalities(const TripleFamily& fam, const FundamentalCase& fc,
                                                long m_max);

}  // namespace dioph
