#include "gaugekit/covers.hpp"

#include <limits>

#include "gaugekit/error.hpp"

namespace gaugekit {

CoverCertificate greedy_net(const MetricTable& d, double eps)
{
    if (!(eps > 0.0)) throw InputError("cover radius must be positive");
    const auto n = d.size();
    CoverCertificate cert{d.id(), eps, {}};
    std::vector<double> gap(n, std::numeric_limits<double>::infinity());
    PointIndex next = 0;
    while (true) {
        cert.centers.push_back(next);
        for (PointIndex y = 0; y < n; ++y) gap[y] = std::min(gap[y], d(next, y));
        double far = -1.0;
        for (PointIndex y = 0; y < n; ++y)
            if (gap[y] > far) {
                far = gap[y];
                next = y;
            }
        if (far < eps) break;
    }
    return cert;
}

CoverCheck verify_cover(const MetricTable& d, const CoverCertificate& cert)
{
    if (cert.metric_id != d.id())
        throw InputError("certificate is for metric '" + cert.metric_id + "', not '" + d.id() + "'");
    for (auto c : cert.centers)
        if (c >= d.size()) throw InputError("cover center out of range");
    for (PointIndex y = 0; y < d.size(); ++y) {
        bool hit = false;
        for (auto c : cert.centers)
            if (d(c, y) < cert.epsilon) {
                hit = true;
                break;
            }
        if (!hit) return {false, y};
    }
    return {};
}

CoverProfile cover_profile(const Gauge& g, const ToleranceProfile& tol)
{
    CoverProfile profile;
    profile.epsilons = tol.epsilon_grid();
    for (const auto& d : g.members()) {
        profile.members.push_back(d.id());
        auto& row = profile.counts.emplace_back();
        for (double eps : profile.epsilons) row.push_back(greedy_net(d, eps).centers.size());
    }
    return profile;
}

}  // namespace gaugekit
