#ifndef LPA_WITNESSES_HPP
#define LPA_WITNESSES_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lpa/algebra.hpp"
#include "lpa/verdicts.hpp"

namespace lpa {

// ---------------------------------------------------------------------------
// Folner certificates
// ---------------------------------------------------------------------------

/// Finite K, F drawn from the basis with |KF \ {0}| < p |F|.  The
/// constructions used here additionally guarantee that every product of a
/// K-term by an F-term is zero or a single basis term; `strict` records
/// that the verification confirmed this.
struct FolnerCertificate {
    std::vector<Term> K, F;
    Rational p;
    long long product_count = 0;
    bool strict = true;
    std::string construction;  // which proof case produced F
};

struct FolnerCheck {
    long long count = 0;
    bool ok = false;
    bool strict = true;
};

/// Counts the distinct nonzero normal-form products k*f and compares the
/// count with p|F| in exact arithmetic.
FolnerCheck verify_folner(const AlgebraContext& ctx, const std::vector<Term>& K,
                          const std::vector<Term>& F, const Rational& p);

/// Builds a certificate for the context's ring kind, selecting the
/// construction from the clause under which the amenability verdict holds:
/// pivot-times-fresh-bundle-edges, pivot-cycle power windows, paths avoiding
/// X, or the whole basis when it is finite.  Errors when the verdict fails,
/// when |F| cannot exceed min_size, and in the one Leavitt-kind case whose
/// amenability rests on a direct-sum decomposition rather than any basis
/// certificate (see README).
FolnerCertificate folner(const AlgebraContext& ctx, const std::vector<Term>& K,
                         const Rational& p, int min_size);

// ---------------------------------------------------------------------------
// The monomorphism pair of the failing strong-rank case
// ---------------------------------------------------------------------------

/// The pair (a, b) built from covering nonexclusive maximal cycles; the map
/// (x, y) -> a x + b y is the claimed monomorphism (RE)^2 -> RE.
struct MonoPair {
    Element a, b;
    struct Piece {
        Path omega, xi;        // two distinct cycles based at the shared vertex
        std::vector<Path> mu;  // chosen paths from the base to every reachable vertex
    };
    std::vector<Piece> pieces;
};

/// Requires a path-ring context whose strong-rank verdict fails outright.
MonoPair mono_pair(const AlgebraContext& ctx);

struct MonoCheck {
    bool ok = true;
    long long trials_run = 0;
    bool untested = false;
};

/// Randomized refutation search: samples nonzero pairs (x, y) of bounded
/// support and checks a x + b y != 0.  A property test, not a proof.
MonoCheck check_mono_pair(const AlgebraContext& ctx, const MonoPair& pair, int trials,
                          int max_support, std::uint64_t seed);

// ---------------------------------------------------------------------------
// The matrix quasiorder x = a y b
// ---------------------------------------------------------------------------

struct PrecsimWitness {
    MatrixElement x, y, a, b;
};

PrecsimWitness precsim_swap(const MatrixElement& x, const MatrixElement& y);          // x(+)y <~ y(+)x
PrecsimWitness precsim_left_summand(const MatrixElement& x, const MatrixElement& y);  // x <~ x(+)y
PrecsimWitness precsim_direct_sum(const PrecsimWitness& w1, const PrecsimWitness& w2);
PrecsimWitness precsim_sum(const MatrixElement& x, const MatrixElement& y);         // x+y <~ x(+)y
PrecsimWitness precsim_orthogonal(const MatrixElement& x, const MatrixElement& y);  // x(+)y <~ x+y
PrecsimWitness precsim_commute(const MatrixElement& x, const MatrixElement& y);     // xy <~ yx
PrecsimWitness precsim_compose(const PrecsimWitness& w1, const PrecsimWitness& w2);

/// Dispatcher over the elementary rules by roman-numeral name
/// ("i", "ii", "iv", "v", "vi"; rule iii composes two witnesses and has its
/// own entry point).
PrecsimWitness precsim_rule(const std::string& rule, const std::vector<MatrixElement>& operands);

/// The 1(+)1 <~ 1 witness for a Leavitt-kind ring whose rank verdict fails:
/// returns a witness with x = I_2, y = (1), so that a b = I_2 exactly.
/// Assembled from cycle-pair seeds, path conjugations, and the saturation
/// induction; every step is re-verified by exact multiplication.
PrecsimWitness properly_infinite(const AlgebraContext& ctx);

// ---------------------------------------------------------------------------
// Ideal units and corner fullness
// ---------------------------------------------------------------------------

/// The unit of the ideal generated by a hereditary, V-saturated X that
/// contains all cycle vertices, with no infinite emitters outside X.
/// Centrality is checked on every vertex, every named edge and ghost edge,
/// and representative bundle copies (the computation is uniform in the copy
/// index); the unit law on the ideal generators is checked up to the
/// length bound.
Element ideal_unit(const AlgebraContext& ctx, const VertexSet& X, int length_bound = 6);

/// Pairs (lambda_i, rho_i) with sum lambda_i eps rho_i = 1 for the corner
/// idempotent eps of X, built along the saturation stages.  Requires the
/// V-saturated closure of the hereditary X to be all of E^0.
std::vector<std::pair<Element, Element>> corner_fullness(const AlgebraContext& ctx,
                                                         const VertexSet& X);

}  // namespace lpa

#include "lpa/witnesses_impl.hpp"  // IWYU pragma: keep

#endif
