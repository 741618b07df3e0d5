#include "sodia/netmap_layout.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

namespace sodia {

namespace {

bool name_order(const Contact* a, const Contact* b) {
    return std::tie(a->display_name, a->contact_id) < std::tie(b->display_name, b->contact_id);
}

double distance(const Position& a, const Position& b, const SectorConfig& cfg) {
    const auto pa = to_canvas(a, cfg, 1.0);
    const auto pb = to_canvas(b, cfg, 1.0);
    return std::hypot(pa.x - pb.x, pa.y - pb.y);
}

std::vector<ContactPair> colliding_pairs(const std::vector<Contact>& contacts, const SectorConfig& cfg,
                                         double min_separation) {
    std::vector<CanvasPoint> pts;
    pts.reserve(contacts.size());
    for (const auto& c : contacts) pts.push_back(to_canvas(c.position, cfg, 1.0));

    std::vector<ContactPair> out;
    for (std::size_t i = 0; i < contacts.size(); ++i) {
        for (std::size_t j = i + 1; j < contacts.size(); ++j) {
            if (std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y) >= min_separation) continue;
            const auto& a = contacts[i].contact_id;
            const auto& b = contacts[j].contact_id;
            out.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Evenly spaced fractions across [margin, 1 - margin]; a lone contact goes to the middle.
double spread_fraction(std::size_t k, std::size_t n, double margin) {
    double f = n == 1 ? 0.5 : margin + static_cast<double>(k) * (1.0 - 2.0 * margin) / static_cast<double>(n - 1);
    if (f >= 1.0) f = std::nextafter(1.0, 0.0);
    return std::max(f, 0.0);
}

} // namespace

void require_valid(const LayoutParams& p) {
    if (!(p.mark_radius > 0.0 && p.mark_radius < 0.5)) throw OutOfDomain("mark_radius must lie in (0, 0.5)");
    if (!(p.radius_tolerance >= 0.0 && p.radius_tolerance < 0.1))
        throw OutOfDomain("radius_tolerance must lie in [0, 0.1)");
}

std::vector<ContactPair> collisions(const NetMapVersion& v, const LayoutParams& p) {
    require_valid(v);
    require_valid(p);
    return colliding_pairs(v.contacts, v.sector_config, p.min_separation());
}

std::vector<std::vector<const Contact*>> radial_bands(std::span<const Contact* const> sector_contacts,
                                                      double min_separation) {
    std::vector<const Contact*> sorted(sector_contacts.begin(), sector_contacts.end());
    std::sort(sorted.begin(), sorted.end(), [](const Contact* a, const Contact* b) {
        return std::tie(a->position.radius, a->display_name, a->contact_id) <
               std::tie(b->position.radius, b->display_name, b->contact_id);
    });

    std::vector<std::vector<const Contact*>> bands;
    double band_start = 0.0;
    for (const Contact* c : sorted) {
        if (bands.empty() || c->position.radius - band_start >= min_separation) {
            bands.emplace_back();
            band_start = c->position.radius;
        }
        bands.back().push_back(c);
    }
    return bands;
}

LayoutSuggestion suggest_layout(const NetMapVersion& v, const LayoutParams& p) {
    require_valid(v);
    require_valid(p);

    const auto& cfg = v.sector_config;
    const double min_sep = p.min_separation();
    const auto initial = colliding_pairs(v.contacts, cfg, min_sep);
    if (initial.empty()) return {};

    std::set<std::string> crowded;
    for (const auto& [a, b] : initial) {
        crowded.insert(a);
        crowded.insert(b);
    }

    std::vector<Contact> working = v.contacts;
    auto index_of = [&](const std::string& id) {
        for (std::size_t i = 0; i < v.contacts.size(); ++i)
            if (v.contacts[i].contact_id == id) return i;
        return v.contacts.size();
    };

    // Pass 1: angular spread of crowded radial bands.
    for (const auto& sector : cfg.sectors) {
        std::vector<const Contact*> members;
        for (const auto& c : v.contacts)
            if (c.position.sector_id == sector.id) members.push_back(&c);

        for (auto band : radial_bands(members, min_sep)) {
            const bool involved = std::any_of(band.begin(), band.end(),
                                              [&](const Contact* c) { return crowded.contains(c->contact_id); });
            if (!involved) continue;

            std::sort(band.begin(), band.end(), [](const Contact* a, const Contact* b) {
                return std::tie(a->position.angle_frac, a->display_name, a->contact_id) <
                       std::tie(b->position.angle_frac, b->display_name, b->contact_id);
            });
            double mean_radius = 0.0;
            for (const Contact* c : band) mean_radius += c->position.radius;
            mean_radius /= static_cast<double>(band.size());

            // Angular half-width of a mark seen from the ego, as a wedge fraction.
            double margin = std::asin(std::min(1.0, p.mark_radius / mean_radius)) / cfg.wedge_angle();
            margin = std::min(margin, 0.5);

            for (std::size_t k = 0; k < band.size(); ++k)
                working[index_of(band[k]->contact_id)].position.angle_frac =
                    spread_fraction(k, band.size(), margin);
        }
    }

    // Pass 2: bounded outward nudge of the later contact (by name, id) of each remaining pair.
    const double delta = p.radius_tolerance;
    if (delta > 0.0) {
        std::vector<int> nudges(working.size(), 0);
        for (const auto& [ida, idb] : colliding_pairs(working, cfg, min_sep)) {
            const auto ia = index_of(ida);
            const auto ib = index_of(idb);
            if (distance(working[ia].position, working[ib].position, cfg) >= min_sep) continue;

            const auto later = name_order(&v.contacts[ia], &v.contacts[ib]) ? ib : ia;
            const auto other = later == ia ? ib : ia;
            const double original = v.contacts[later].position.radius;

            for (int k = nudges[later] + 1; k <= 2; ++k) {
                double candidate = std::min(1.0, original + k * (delta / 2.0));
                while (candidate - original > delta) candidate = std::nextafter(candidate, 0.0);
                if (candidate <= working[later].position.radius) continue;

                Position trial = working[later].position;
                trial.radius = candidate;
                if (distance(trial, working[other].position, cfg) >= min_sep) {
                    working[later].position = trial;
                    nudges[later] = k;
                    break;
                }
            }
        }
    }

    LayoutSuggestion s;
    for (std::size_t i = 0; i < working.size(); ++i)
        if (!(working[i].position == v.contacts[i].position))
            s.moves.emplace(working[i].contact_id, working[i].position);
    s.unresolved = colliding_pairs(apply_suggestion(v, s).contacts, cfg, min_sep);
    return s;
}

NetMapVersion apply_suggestion(const NetMapVersion& v, const LayoutSuggestion& s) {
    NetMapVersion out = v;
    for (const auto& [id, pos] : s.moves) {
        Contact* c = out.find_contact(id);
        if (!c) throw InvalidReference("suggestion moves unknown contact '" + id + "'");
        if (c->position.sector_id != pos.sector_id)
            throw ValidationError({{"contact:" + id, "SECTOR_CHANGED", "layout moves must keep the sector"}});
        c->position = pos;
    }
    return out;
}

} // namespace sodia
