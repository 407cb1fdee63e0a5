#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gaugekit/completion.hpp"
#include "gaugekit/error.hpp"
#include "gaugekit/gauges.hpp"
#include "gaugekit/metrics.hpp"
#include "gaugekit/relations.hpp"

namespace gaugekit {

// ---------------------------------------------------------------------------
// One-point compactification
// ---------------------------------------------------------------------------

// K_1 ⊂ K_2 ⊂ ... ⊂ K_m, each nonempty and leaving a nonempty complement.
struct ExhaustionChain {
    SpacePtr space;
    std::vector<Subset> subsets;
};

void check_chain(const ExhaustionChain& chain);

// Member id of d_K for the chain element K_j (j counted from 1).
std::string one_point_member_id(std::string_view base, std::size_t j);

// d_K(x,y) = min(d(x,y), d(x,¬K) + d(¬K,y)) for every member d and chain
// element K, generated to filtered closure.
Gauge one_point_gauge(const Gauge& g, const ExhaustionChain& chain);

// The point at infinity over one_point_gauge(g, chain): xi_{d_K}(x) = d(x,¬K),
// and the pointwise maximum of the component profiles for generated maxima.
CauchyPoint infinity_profile(const Gauge& g, const ExhaustionChain& chain);

// ---------------------------------------------------------------------------
// Function dictionaries and the Stone-Čech gauge
// ---------------------------------------------------------------------------

// Continuous functions X -> [0,1], plus named stackings of several of them
// into maps X -> [0,1]^k.
class FunctionDict {
public:
    struct Entry {
        std::string id;
        std::vector<double> values;
    };
    struct Composite {
        std::string id;
        std::vector<std::size_t> parts;
    };

    explicit FunctionDict(SpacePtr space);

    const SpacePtr& space() const noexcept { return space_; }
    std::size_t size() const noexcept { return entries_.size(); }
    const std::vector<Entry>& entries() const noexcept { return entries_; }
    const std::vector<Composite>& composites() const noexcept { return composites_; }

    const Entry& entry(std::size_t k) const { return entries_.at(k); }
    const std::vector<double>& values(std::string_view id) const { return entries_[index_of(id)].values; }
    std::size_t index_of(std::string_view id) const;
    std::optional<std::size_t> find(std::string_view id) const;

    // Values must lie in [0,1]; ids are unique across entries and composites.
    std::size_t add(std::string id, std::vector<double> values);
    std::size_t add_composite(std::string id, const std::vector<std::string>& parts);

private:
    void check_new_id(const std::string& id) const;

    SpacePtr space_;
    std::vector<Entry> entries_;
    std::vector<Composite> composites_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

// Id of the member stacking every entry of the dictionary.
inline constexpr std::string_view kStackId = "stack(*)";

struct DictReport {
    bool valid = true;
    std::optional<std::string> entry;
    std::optional<PointIndex> point;
    std::optional<ContinuityFailure> failure;
};

// Every entry must be continuous at every point of the base gauge, with [0,1]
// carrying the usual distance.
DictReport validate_dict(const FunctionDict& dict, const Gauge& g, const ToleranceProfile& tol);

// Members d_phi(x,y) = max_i |phi_i(x) - phi_i(y)|: one per entry, one per
// composite, and a top member stacking all entries (omitted when the
// dictionary has a single entry). Member ids are the entry and composite ids.
Gauge stone_cech_gauge(const Gauge& g, const FunctionDict& dict);

struct Bracket {
    double epsilon = 0.0;
    double lo = 0.0;  // A_{phi,eps}
    double hi = 0.0;  // B_{phi,eps}
};

struct Evaluation {
    double value = 0.0;
    std::vector<Bracket> trace;  // grid order, slack last
};

// Brackets phi over {x : xi_phi(x) <= eps} for every grid epsilon and for the
// slack, and returns the midpoint of the narrowest one. Throws
// LocatednessError when a bracket is empty.
Evaluation evaluate_point(const CauchyPoint& xi, const FunctionDict& dict, std::string_view entry,
                          const ToleranceProfile& tol);

// Locatedness of an evaluation failed. `family` is a set of entries no sample
// point approximates simultaneously.
class InvalidEvaluationError : public LocatednessError {
public:
    InvalidEvaluationError(const std::string& what, std::vector<std::string> family)
        : LocatednessError(what), family_(std::move(family))
    {
    }
    const std::vector<std::string>& family() const noexcept { return family_; }

private:
    std::vector<std::string> family_;
};

// xi_phi(y) = max_i |phi_i(y) - value(phi_i)| for every member of the
// Stone-Čech gauge. `values` must name every entry.
CauchyPoint cauchy_from_evaluation(const std::map<std::string, double, std::less<>>& values, const FunctionDict& dict,
                                   double slack, std::string label = "evaluation");

// ---------------------------------------------------------------------------
// Evaluation data
// ---------------------------------------------------------------------------

struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    double width() const noexcept { return hi - lo; }
    double midpoint() const noexcept { return lo + (hi - lo) / 2; }
    double distance(double v) const noexcept { return v < lo ? lo - v : (v > hi ? v - hi : 0.0); }
};

using EvaluationDatum = std::map<std::string, Interval, std::less<>>;

// J(phi) = [phi(x), phi(x)].
EvaluationDatum point_datum(const FunctionDict& dict, PointIndex x);

std::map<std::string, double, std::less<>> midpoints(const EvaluationDatum& datum);

struct DatumReport {
    bool valid = true;
    std::optional<PointIndex> witness;         // lowest point within slack of every interval
    std::vector<std::string> violating_family;  // entries no point approximates together
};

DatumReport validate_datum(const EvaluationDatum& datum, const FunctionDict& dict, double slack);

// Bisects the widest interval (lowest entry index on ties) and keeps the lower
// closed half when it stays valid, else the upper one, until every width is at
// most width_tol. Once the sample points still consistent with the datum
// agree on every entry, the datum collapses onto their common values.
EvaluationDatum refine_datum(const EvaluationDatum& datum, const FunctionDict& dict, double width_tol,
                             double slack = 0.0);

// C_1 ⊇ C_2 ⊇ ... ⊇ C_m, nonempty, strictly decreasing.
struct TailChain {
    SpacePtr space;
    std::vector<Subset> subsets;
};

void check_chain(const TailChain& chain);

// A(phi) = max_j min_{C_j} phi, B(phi) = min_j max_{C_j} phi.
EvaluationDatum tail_datum(const TailChain& chain, const FunctionDict& dict);

// ---------------------------------------------------------------------------
// Extension maps
// ---------------------------------------------------------------------------

std::string extension_function_id(std::string_view member, std::string_view target_point);

// Adds psi'_{d,g,y}(x) = min(d(g(x),y), 1) for every member d of the target
// gauge and every target point y, skipping ids already present.
void register_extension_functions(FunctionDict& dict, const MapTable& g, const Gauge& target);

struct ExtensionResult {
    PointIndex point = 0;
    CauchyPoint target_point;
};

// Evaluates every psi' entry at xi (under `eval_tol`), builds the target
// Cauchy point from the values below 1, and returns its lowest-index
// representative at `slack`.
ExtensionResult extend_map(const MapTable& g, const Gauge& target, const CauchyPoint& xi, const FunctionDict& dict,
                           double slack, const ToleranceProfile& eval_tol = {});

// psi o phi as a new entry, with psi given on the realized values of phi.
std::size_t compose_dict(FunctionDict& dict, const std::map<double, double>& outer, std::string_view entry,
                         std::string id);
std::size_t compose_dict(FunctionDict& dict, const std::function<double(double)>& outer, std::string_view entry,
                         std::string id);

// ---------------------------------------------------------------------------
// Ultrafilters on {0..n-1}
// ---------------------------------------------------------------------------

inline constexpr std::size_t kMaxUltrafilterBase = 4;

// Member sets as bitmasks over the base set, ascending.
struct Ultrafilter {
    std::size_t n = 0;
    std::vector<std::uint32_t> member_sets;
};

bool is_ultrafilter(std::size_t n, const std::vector<std::uint32_t>& family);

// Exhaustive scan of every family of subsets. Throws SizeError for n > 4.
std::vector<Ultrafilter> enumerate_ultrafilters(std::size_t n);

// The point i with member_sets = {A : i in A}, if any.
std::optional<std::size_t> principal_point(const Ultrafilter& u);

}  // namespace gaugekit
