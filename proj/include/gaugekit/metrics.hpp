#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gaugekit {

using PointIndex = std::size_t;
using Subset = std::vector<PointIndex>;

// Absolute allowance for floating-point roundoff in axiom checks. Excesses at
// or below this are reported separately and never count as violations.
inline constexpr double kRoundoff = 1e-12;

struct Point {
    std::string id;
    std::optional<std::vector<double>> coords;
};

// A finite labeled sample. Ids are unique; coordinates, where present, share
// one dimension.
class PointSet {
public:
    explicit PointSet(std::vector<Point> points, std::optional<double> resolution = std::nullopt);

    std::size_t size() const noexcept { return points_.size(); }
    const Point& point(PointIndex i) const { return points_.at(i); }
    const std::string& id(PointIndex i) const { return points_.at(i).id; }
    std::vector<std::string> ids() const;

    // Throws InputError for an unknown id.
    PointIndex index_of(std::string_view id) const;
    std::optional<PointIndex> find(std::string_view id) const;
    Subset indices_of(const std::vector<std::string>& ids) const;

    bool has_coords() const noexcept;
    std::optional<std::size_t> dimension() const noexcept { return dimension_; }
    std::optional<double> resolution() const noexcept { return resolution_; }

    const std::vector<Point>& points() const noexcept { return points_; }

private:
    std::vector<Point> points_;
    std::optional<double> resolution_;
    std::optional<std::size_t> dimension_;
    std::map<std::string, PointIndex, std::less<>> index_;
};

using SpacePtr = std::shared_ptr<const PointSet>;

SpacePtr make_space(std::vector<Point> points, std::optional<double> resolution = std::nullopt);

// Same object, or the same ordered list of ids.
bool same_space(const PointSet& a, const PointSet& b);

enum class CoordinateKind { euclidean, taxicab, chebyshev };

std::string_view to_string(CoordinateKind kind);
CoordinateKind parse_coordinate_kind(std::string_view name);

// Symmetric distance matrix over a PointSet. Storage is either a dense
// row-major matrix or an embedding (one coordinate vector per point plus a
// norm), evaluated on access. Both are immutable and cheap to copy.
class MetricTable {
public:
    MetricTable(std::string id, SpacePtr space, std::vector<double> values);

    static MetricTable from_rows(std::string id, SpacePtr space, const std::vector<std::vector<double>>& rows);
    static MetricTable embedded(std::string id, SpacePtr space, std::vector<double> coords, std::size_t dim,
                                CoordinateKind kind);

    const std::string& id() const noexcept { return id_; }
    const SpacePtr& space() const noexcept { return space_; }
    std::size_t size() const noexcept { return n_; }
    bool is_dense() const noexcept { return dense_ != nullptr; }

    double operator()(PointIndex i, PointIndex j) const noexcept
    {
        if (dense_) return (*dense_)[i * n_ + j];
        return embedded_distance(i, j);
    }

    std::vector<double> row(PointIndex i) const;
    std::vector<double> dense_values() const;
    std::vector<std::vector<double>> rows() const;

    MetricTable renamed(std::string id) const;

private:
    struct Embedding {
        std::vector<double> coords;
        std::size_t dim;
        CoordinateKind kind;
    };

    MetricTable() = default;
    double embedded_distance(PointIndex i, PointIndex j) const noexcept;

    std::string id_;
    SpacePtr space_;
    std::size_t n_ = 0;
    std::shared_ptr<const std::vector<double>> dense_;
    std::shared_ptr<const Embedding> embedding_;
};

// Exact entry-wise equality over the same space.
bool tables_equal(const MetricTable& a, const MetricTable& b);

// a(x,y) >= b(x,y) for every pair.
bool dominates(const MetricTable& a, const MetricTable& b);

class ToleranceProfile {
public:
    ToleranceProfile() = default;
    ToleranceProfile(double slack, std::vector<double> epsilon_grid);

    double slack() const noexcept { return slack_; }
    const std::vector<double>& epsilon_grid() const noexcept { return grid_; }

private:
    double slack_ = 0.0;
    std::vector<double> grid_;
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

enum class Axiom { nonnegativity, reflexivity, symmetry, triangle };

std::string_view to_string(Axiom axiom);

// Witness indices: (i,i,i) for reflexivity/nonnegativity on the diagonal,
// (i,j,j) for symmetry and nonnegativity, (i,j,k) for d(i,j)+d(j,k) < d(i,k).
struct AxiomViolation {
    Axiom axiom;
    PointIndex i;
    PointIndex j;
    PointIndex k;
    double excess;
};

struct MetricReport {
    std::vector<AxiomViolation> violations;
    std::vector<AxiomViolation> roundoff;
    std::size_t violation_count = 0;
    std::size_t roundoff_count = 0;

    bool valid() const noexcept { return violation_count == 0; }
};

// Checks the pseudometric axioms exactly, except that excesses up to
// kRoundoff are filed under `roundoff`. At most `max_witnesses` of each kind
// are recorded; the counts are always complete.
MetricReport validate_metric(const MetricTable& table, std::size_t max_witnesses = 1024);

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

MetricTable coordinate_metric(const SpacePtr& space, CoordinateKind kind);

// |x_axis - y_axis|.
MetricTable coordinate_projection(const SpacePtr& space, std::size_t axis);

MetricTable discrete_metric(const SpacePtr& space, double c = 1.0);
MetricTable indiscrete_metric(const SpacePtr& space);
MetricTable truncate(const MetricTable& d, double c);
MetricTable pointwise_max(const MetricTable& a, const MetricTable& b);
MetricTable pointwise_max(std::span<const MetricTable> tables, std::string id = {});

// 0 inside a block, 1 across blocks. Blocks must partition the space.
MetricTable partition_metric(const SpacePtr& space, const std::vector<Subset>& blocks);

// min(d(x,y), d(x,A) + d(A,y)).
MetricTable collapse(const MetricTable& d, const Subset& a);

// The restriction of d to S, over a new PointSet holding S in the given order.
MetricTable restrict_to(const MetricTable& d, const Subset& s);

// sup_i min(t_i, 1) over per-coordinate tables.
MetricTable sup_family(std::span<const MetricTable> coordinate_tables);

// sum_i min(t_i, 1) * 2^-i, with i counted from 0.
MetricTable weighted_sum(std::span<const MetricTable> coordinate_tables);

// Distances from every point to a nonempty subset: y -> min_{a in A} d(a,y).
std::vector<double> distances_to_set(const MetricTable& d, const Subset& a);

// ---------------------------------------------------------------------------
// Balls
// ---------------------------------------------------------------------------

// Points at strict distance < eps from x, in index order.
Subset ball(const MetricTable& d, PointIndex x, double eps);
Subset ball(const MetricTable& d, std::string_view x, double eps);

// Smallest positive entry of the table, or +inf if there is none.
double min_positive_distance(const MetricTable& d);

}  // namespace gaugekit
