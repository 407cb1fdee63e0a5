#include "gaugekit/metrics.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "gaugekit/error.hpp"

namespace gaugekit {

namespace {

std::string fmt_real(double v)
{
    std::ostringstream out;
    out.precision(12);
    out << v;
    return out.str();
}

void require_same_space(const MetricTable& a, const MetricTable& b)
{
    if (!same_space(*a.space(), *b.space()))
        throw InputError("metrics '" + a.id() + "' and '" + b.id() + "' live on different point sets");
}

}  // namespace

// ---------------------------------------------------------------------------
// PointSet
// ---------------------------------------------------------------------------

PointSet::PointSet(std::vector<Point> points, std::optional<double> resolution)
    : points_(std::move(points)), resolution_(resolution)
{
    if (points_.empty()) throw InputError("point set is empty");
    if (resolution_ && !(*resolution_ > 0.0)) throw InputError("resolution must be positive");
    for (PointIndex i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (!index_.emplace(p.id, i).second) throw InputError("duplicate point id '" + p.id + "'");
        if (!p.coords) continue;
        for (double c : *p.coords)
            if (!std::isfinite(c)) throw InputError("non-finite coordinate at point '" + p.id + "'");
        if (!dimension_) {
            dimension_ = p.coords->size();
        } else if (*dimension_ != p.coords->size()) {
            throw InputError("point '" + p.id + "' has coordinate dimension " + std::to_string(p.coords->size()) +
                             ", expected " + std::to_string(*dimension_));
        }
    }
}

std::vector<std::string> PointSet::ids() const
{
    std::vector<std::string> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.id);
    return out;
}

PointIndex PointSet::index_of(std::string_view id) const
{
    auto it = index_.find(id);
    if (it == index_.end()) throw InputError("unknown point id '" + std::string(id) + "'");
    return it->second;
}

std::optional<PointIndex> PointSet::find(std::string_view id) const
{
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Subset PointSet::indices_of(const std::vector<std::string>& ids) const
{
    Subset out;
    out.reserve(ids.size());
    for (const auto& id : ids) out.push_back(index_of(id));
    return out;
}

bool PointSet::has_coords() const noexcept
{
    return std::all_of(points_.begin(), points_.end(), [](const Point& p) { return p.coords.has_value(); });
}

SpacePtr make_space(std::vector<Point> points, std::optional<double> resolution)
{
    return std::make_shared<const PointSet>(std::move(points), resolution);
}

bool same_space(const PointSet& a, const PointSet& b)
{
    if (&a == &b) return true;
    if (a.size() != b.size()) return false;
    for (PointIndex i = 0; i < a.size(); ++i)
        if (a.id(i) != b.id(i)) return false;
    return true;
}

std::string_view to_string(CoordinateKind kind)
{
    switch (kind) {
    case CoordinateKind::euclidean: return "euclidean";
    case CoordinateKind::taxicab: return "taxicab";
    case CoordinateKind::chebyshev: return "chebyshev";
    }
    return "?";
}

CoordinateKind parse_coordinate_kind(std::string_view name)
{
    if (name == "euclidean") return CoordinateKind::euclidean;
    if (name == "taxicab") return CoordinateKind::taxicab;
    if (name == "chebyshev") return CoordinateKind::chebyshev;
    throw InputError("unknown coordinate metric kind '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// MetricTable
// ---------------------------------------------------------------------------

MetricTable::MetricTable(std::string id, SpacePtr space, std::vector<double> values)
    : id_(std::move(id)), space_(std::move(space))
{
    if (!space_) throw InputError("metric '" + id_ + "' has no point set");
    n_ = space_->size();
    if (values.size() != n_ * n_)
        throw InputError("metric '" + id_ + "' has " + std::to_string(values.size()) + " entries, expected " +
                         std::to_string(n_) + "x" + std::to_string(n_));
    dense_ = std::make_shared<const std::vector<double>>(std::move(values));
}

MetricTable MetricTable::from_rows(std::string id, SpacePtr space, const std::vector<std::vector<double>>& rows)
{
    if (!space) throw InputError("metric '" + id + "' has no point set");
    const auto n = space->size();
    if (rows.size() != n)
        throw InputError("metric '" + id + "' has " + std::to_string(rows.size()) + " rows, expected " +
                         std::to_string(n));
    std::vector<double> values;
    values.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n)
            throw InputError("metric '" + id + "' row " + std::to_string(i) + " has " +
                             std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
        values.insert(values.end(), rows[i].begin(), rows[i].end());
    }
    return MetricTable(std::move(id), std::move(space), std::move(values));
}

MetricTable MetricTable::embedded(std::string id, SpacePtr space, std::vector<double> coords, std::size_t dim,
                                  CoordinateKind kind)
{
    if (!space) throw InputError("metric '" + id + "' has no point set");
    if (dim == 0) throw InputError("metric '" + id + "' has a zero-dimensional embedding");
    if (coords.size() != space->size() * dim)
        throw InputError("metric '" + id + "' embedding has " + std::to_string(coords.size()) +
                         " coordinates, expected " + std::to_string(space->size() * dim));
    MetricTable t;
    t.id_ = std::move(id);
    t.space_ = std::move(space);
    t.n_ = t.space_->size();
    t.embedding_ = std::make_shared<const Embedding>(Embedding{std::move(coords), dim, kind});
    return t;
}

double MetricTable::embedded_distance(PointIndex i, PointIndex j) const noexcept
{
    const auto& e = *embedding_;
    const double* a = e.coords.data() + i * e.dim;
    const double* b = e.coords.data() + j * e.dim;
    if (e.dim == 1) return std::abs(a[0] - b[0]);
    double acc = 0.0;
    switch (e.kind) {
    case CoordinateKind::euclidean:
        for (std::size_t k = 0; k < e.dim; ++k) acc += (a[k] - b[k]) * (a[k] - b[k]);
        return std::sqrt(acc);
    case CoordinateKind::taxicab:
        for (std::size_t k = 0; k < e.dim; ++k) acc += std::abs(a[k] - b[k]);
        return acc;
    case CoordinateKind::chebyshev:
        for (std::size_t k = 0; k < e.dim; ++k) acc = std::max(acc, std::abs(a[k] - b[k]));
        return acc;
    }
    return acc;
}

std::vector<double> MetricTable::row(PointIndex i) const
{
    if (i >= n_) throw InputError("row index out of range in metric '" + id_ + "'");
    std::vector<double> out(n_);
    for (PointIndex j = 0; j < n_; ++j) out[j] = (*this)(i, j);
    return out;
}

std::vector<double> MetricTable::dense_values() const
{
    if (dense_) return *dense_;
    std::vector<double> out(n_ * n_);
    for (PointIndex i = 0; i < n_; ++i)
        for (PointIndex j = 0; j < n_; ++j) out[i * n_ + j] = embedded_distance(i, j);
    return out;
}

std::vector<std::vector<double>> MetricTable::rows() const
{
    std::vector<std::vector<double>> out;
    out.reserve(n_);
    for (PointIndex i = 0; i < n_; ++i) out.push_back(row(i));
    return out;
}

MetricTable MetricTable::renamed(std::string id) const
{
    MetricTable t = *this;
    t.id_ = std::move(id);
    return t;
}

bool tables_equal(const MetricTable& a, const MetricTable& b)
{
    if (!same_space(*a.space(), *b.space())) return false;
    const auto n = a.size();
    for (PointIndex i = 0; i < n; ++i)
        for (PointIndex j = 0; j < n; ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

bool dominates(const MetricTable& a, const MetricTable& b)
{
    require_same_space(a, b);
    const auto n = a.size();
    for (PointIndex i = 0; i < n; ++i)
        for (PointIndex j = 0; j < n; ++j)
            if (a(i, j) < b(i, j)) return false;
    return true;
}

ToleranceProfile::ToleranceProfile(double slack, std::vector<double> epsilon_grid)
    : slack_(slack), grid_(std::move(epsilon_grid))
{
    if (!(slack_ >= 0.0) || !std::isfinite(slack_)) throw InputError("slack must be a finite nonnegative real");
    for (std::size_t k = 0; k < grid_.size(); ++k) {
        if (!(grid_[k] > 0.0) || !std::isfinite(grid_[k]))
            throw InputError("epsilon grid entries must be positive and finite");
        if (k > 0 && !(grid_[k] < grid_[k - 1])) throw InputError("epsilon grid must be strictly decreasing");
    }
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

std::string_view to_string(Axiom axiom)
{
    switch (axiom) {
    case Axiom::nonnegativity: return "nonnegativity";
    case Axiom::reflexivity: return "reflexivity";
    case Axiom::symmetry: return "symmetry";
    case Axiom::triangle: return "triangle";
    }
    return "?";
}

MetricReport validate_metric(const MetricTable& d, std::size_t max_witnesses)
{
    MetricReport report;
    auto file = [&](Axiom axiom, PointIndex i, PointIndex j, PointIndex k, double excess) {
        if (!(excess <= kRoundoff)) {  // NaN lands here too
            ++report.violation_count;
            if (report.violations.size() < max_witnesses) report.violations.push_back({axiom, i, j, k, excess});
        } else if (excess > 0.0) {
            ++report.roundoff_count;
            if (report.roundoff.size() < max_witnesses) report.roundoff.push_back({axiom, i, j, k, excess});
        }
    };

    const auto n = d.size();
    bool symmetric = true;
    for (PointIndex i = 0; i < n; ++i) {
        const double dii = d(i, i);
        if (dii != 0.0) file(Axiom::reflexivity, i, i, i, std::abs(dii));
        for (PointIndex j = 0; j < n; ++j) {
            const double dij = d(i, j);
            if (dij < 0.0 || std::isnan(dij)) file(Axiom::nonnegativity, i, j, j, std::isnan(dij) ? dij : -dij);
            if (j > i) {
                const double gap = std::abs(dij - d(j, i));
                if (gap != 0.0) {
                    file(Axiom::symmetry, i, j, j, gap);
                    if (!(gap <= kRoundoff)) symmetric = false;
                }
            }
        }
    }

    // With symmetry, (i,j,k) and (k,j,i) state the same inequality.
    for (PointIndex i = 0; i < n; ++i) {
        for (PointIndex k = symmetric ? i + 1 : 0; k < n; ++k) {
            if (k == i) continue;
            const double dik = d(i, k);
            for (PointIndex j = 0; j < n; ++j) {
                if (j == i || j == k) continue;
                const double excess = dik - (d(i, j) + d(j, k));
                if (excess > 0.0 || std::isnan(excess)) file(Axiom::triangle, i, j, k, excess);
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

MetricTable coordinate_metric(const SpacePtr& space, CoordinateKind kind)
{
    if (!space->has_coords()) throw InputError("coordinate metric needs coordinates on every point");
    const auto dim = *space->dimension();
    if (dim == 0) throw InputError("coordinate metric needs at least one coordinate");
    std::vector<double> coords;
    coords.reserve(space->size() * dim);
    for (const auto& p : space->points()) coords.insert(coords.end(), p.coords->begin(), p.coords->end());
    return MetricTable::embedded(std::string(to_string(kind)), space, std::move(coords), dim, kind);
}

MetricTable coordinate_projection(const SpacePtr& space, std::size_t axis)
{
    if (!space->has_coords()) throw InputError("coordinate projection needs coordinates on every point");
    if (axis >= *space->dimension())
        throw InputError("axis " + std::to_string(axis) + " out of range for dimension " +
                         std::to_string(*space->dimension()));
    std::vector<double> coords;
    coords.reserve(space->size());
    for (const auto& p : space->points()) coords.push_back((*p.coords)[axis]);
    return MetricTable::embedded("axis" + std::to_string(axis), space, std::move(coords), 1,
                                 CoordinateKind::chebyshev);
}

MetricTable discrete_metric(const SpacePtr& space, double c)
{
    if (!(c > 0.0) || !std::isfinite(c)) throw InputError("discrete metric constant must be positive");
    const auto n = space->size();
    std::vector<double> v(n * n, c);
    for (PointIndex i = 0; i < n; ++i) v[i * n + i] = 0.0;
    return MetricTable("discrete(" + fmt_real(c) + ")", space, std::move(v));
}

MetricTable indiscrete_metric(const SpacePtr& space)
{
    const auto n = space->size();
    return MetricTable("indiscrete", space, std::vector<double>(n * n, 0.0));
}

MetricTable truncate(const MetricTable& d, double c)
{
    if (!(c > 0.0)) throw InputError("truncation level must be positive");
    const auto n = d.size();
    std::vector<double> v(n * n);
    for (PointIndex i = 0; i < n; ++i)
        for (PointIndex j = 0; j < n; ++j) v[i * n + j] = std::min(d(i, j), c);
    return MetricTable("truncate(" + d.id() + "," + fmt_real(c) + ")", d.space(), std::move(v));
}

MetricTable pointwise_max(const MetricTable& a, const MetricTable& b)
{
    require_same_space(a, b);
    const auto n = a.size();
    std::vector<double> v(n * n);
    for (PointIndex i = 0; i < n; ++i)
        for (PointIndex j = 0; j < n; ++j) v[i * n + j] = std::max(a(i, j), b(i, j));
    return MetricTable("max(" + a.id() + "," + b.id() + ")", a.space(), std::move(v));
}

MetricTable pointwise_max(std::span<const MetricTable> tables, std::string id)
{
    if (tables.empty()) throw InputError("maximum of an empty family of metrics");
    for (const auto& t : tables) require_same_space(tables.front(), t);
    const auto n = tables.front().size();
    std::vector<double> v(n * n, 0.0);
    for (const auto& t : tables)
        for (PointIndex i = 0; i < n; ++i)
            for (PointIndex j = 0; j < n; ++j) v[i * n + j] = std::max(v[i * n + j], t(i, j));
    if (id.empty()) {
        id = "max(";
        for (std::size_t k = 0; k < tables.size(); ++k) id += (k ? "," : "") + tables[k].id();
        id += ")";
    }
    return MetricTable(std::move(id), tables.front().space(), std::move(v));
}

MetricTable partition_metric(const SpacePtr& space, const std::vector<Subset>& blocks)
{
    const auto n = space->size();
    std::vector<std::size_t> block_of(n, blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) throw InputError("partition block " + std::to_string(b) + " is empty");
        for (auto i : blocks[b]) {
            if (i >= n) throw InputError("partition block " + std::to_string(b) + " names an unknown point");
            if (block_of[i] != blocks.size())
                throw InputError("point '" + space->id(i) + "' appears in more than one partition block");
            block_of[i] = b;
        }
    }
    for (PointIndex i = 0; i < n; ++i)
        if (block_of[i] == blocks.size()) throw InputError("point '" + space->id(i) + "' is in no partition block");
    std::vector<double> v(n * n);
    for (PointIndex i = 0; i < n; ++i)
        for (PointIndex j = 0; j < n; ++j) v[i * n + j] = block_of[i] == block_of[j] ? 0.0 : 1.0;
    return MetricTable("partition", space, std::move(v));
}

std::vector<double> distances_to_set(const MetricTable& d, const Subset& a)
{
    if (a.empty()) throw InputError("distance to an empty set");
    const auto n = d.size();
    for (auto i : a)
        if (i >= n) throw InputError("subset names an unknown point");
    std::vector<double> out(n, std::numeric_limits<double>::infinity());
    for (PointIndex y = 0; y < n; ++y)
        for (auto x : a) out[y] = std::min(out[y], d(x, y));
    return out;
}

MetricTable collapse(const MetricTable& d, const Subset& a)
{
    const auto to_a = distances_to_set(d, a);
    const auto n = d.size();
    std::vector<double> v(n * n);
    for (PointIndex i = 0; i < n; ++i)
        for (PointIndex j = 0; j < n; ++j) v[i * n + j] = i == j ? 0.0 : std::min(d(i, j), to_a[i] + to_a[j]);
    return MetricTable("collapse(" + d.id() + ")", d.space(), std::move(v));
}

MetricTable restrict_to(const MetricTable& d, const Subset& s)
{
    if (s.empty()) throw InputError("restriction to an empty subset");
    std::vector<Point> pts;
    pts.reserve(s.size());
    for (auto i : s) {
        if (i >= d.size()) throw InputError("restriction subset names an unknown point");
        pts.push_back(d.space()->point(i));
    }
    auto sub = make_space(std::move(pts), d.space()->resolution());  // rejects repeats
    const auto m = s.size();
    std::vector<double> v(m * m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) v[a * m + b] = d(s[a], s[b]);
    return MetricTable(d.id(), std::move(sub), std::move(v));
}

namespace {

template <typename Combine>
MetricTable combine_clamped(std::span<const MetricTable> tables, std::string id, Combine combine)
{
    if (tables.empty()) throw InputError(id + " needs at least one coordinate table");
    for (const auto& t : tables) require_same_space(tables.front(), t);
    const auto n = tables.front().size();
    std::vector<double> v(n * n, 0.0);
    for (std::size_t k = 0; k < tables.size(); ++k) {
        const auto& t = tables[k];
        for (PointIndex i = 0; i < n; ++i)
            for (PointIndex j = 0; j < n; ++j) v[i * n + j] = combine(v[i * n + j], std::min(t(i, j), 1.0), k);
    }
    return MetricTable(std::move(id), tables.front().space(), std::move(v));
}

}  // namespace

MetricTable sup_family(std::span<const MetricTable> coordinate_tables)
{
    return combine_clamped(coordinate_tables, "sup_family",
                           [](double acc, double g, std::size_t) { return std::max(acc, g); });
}

MetricTable weighted_sum(std::span<const MetricTable> coordinate_tables)
{
    return combine_clamped(coordinate_tables, "weighted_sum", [](double acc, double g, std::size_t k) {
        return acc + std::ldexp(g, -static_cast<int>(k));
    });
}

// ---------------------------------------------------------------------------
// Balls
// ---------------------------------------------------------------------------

Subset ball(const MetricTable& d, PointIndex x, double eps)
{
    if (x >= d.size()) throw InputError("ball center out of range");
    if (!(eps > 0.0)) throw InputError("ball radius must be positive");
    Subset out;
    for (PointIndex y = 0; y < d.size(); ++y)
        if (d(y, x) < eps) out.push_back(y);
    return out;
}

Subset ball(const MetricTable& d, std::string_view x, double eps)
{
    return ball(d, d.space()->index_of(x), eps);
}

double min_positive_distance(const MetricTable& d)
{
    double best = std::numeric_limits<double>::infinity();
    const auto n = d.size();
    for (PointIndex i = 0; i < n; ++i)
        for (PointIndex j = i + 1; j < n; ++j) {
            const double v = d(i, j);
            if (v > 0.0 && v < best) best = v;
        }
    return best;
}

}  // namespace gaugekit
