#include "sodia/svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>

namespace sodia {

namespace {

// Fixed three decimals with trailing zeros stripped; byte-stable across runs.
std::string num(double x) {
    std::string s = fmt::format("{:.3f}", x);
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    if (s == "-0") s = "0";
    return s;
}

void header(std::string& out, double width, double height) {
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" "
        "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\">\n",
        num(width), num(height));
}

} // namespace

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += ch;
        }
    }
    return out;
}

void require_valid(const RenderSpec& s) {
    const double all[] = {s.netmap_size, s.center,     s.plot_radius, s.mark_radius,
                          s.timebar_width, s.lane_height, s.gutter,      s.axis_band};
    for (double x : all)
        if (!(x > 0.0) || !std::isfinite(x)) throw OutOfDomain("render dimensions must be positive");
    if (s.plot_radius > s.center || s.center + s.plot_radius > s.netmap_size)
        throw OutOfDomain("plot circle must fit on the canvas");
    if (s.gutter >= s.timebar_width) throw OutOfDomain("lane label gutter must be narrower than the time bar");
}

std::string render_netmap(const NetMapVersion& v, const RenderSpec& spec) {
    require_valid(v);
    require_valid(spec);

    const auto& cfg = v.sector_config;
    const double c = spec.center;
    auto place = [&](const Position& p) {
        const auto pt = to_canvas(p, cfg, spec.plot_radius);
        return CanvasPoint{c + pt.x, c + pt.y};
    };

    std::string out;
    header(out, spec.netmap_size, spec.netmap_size);

    out += "<g class=\"sectors\" stroke=\"#999999\" stroke-width=\"1\">\n";
    const double wedge = cfg.wedge_angle();
    const std::size_t n = cfg.sectors.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (n > 1) {
            const double a = static_cast<double>(i) * wedge;
            out += fmt::format("<line class=\"sector-boundary\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", num(c),
                               num(c), num(c + spec.plot_radius * std::sin(a)),
                               num(c - spec.plot_radius * std::cos(a)));
        }
        const double mid = (static_cast<double>(i) + 0.5) * wedge;
        const double lr = spec.plot_radius + spec.mark_radius * 1.5;
        out += fmt::format(
            "<text class=\"sector-label\" x=\"{}\" y=\"{}\" text-anchor=\"middle\" stroke=\"none\" "
            "fill=\"#555555\" font-size=\"16\">{}</text>\n",
            num(c + lr * std::sin(mid)), num(c - lr * std::cos(mid)), xml_escape(cfg.sectors[i].label));
    }
    out += "</g>\n";

    out += "<g class=\"guides\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1\">\n";
    for (int k = 1; k <= 3; ++k)
        out += fmt::format("<circle class=\"guide\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n", num(c), num(c),
                           num(spec.plot_radius * k / 3.0));
    out += "</g>\n";

    out += fmt::format("<circle class=\"ego\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#333333\"/>\n", num(c), num(c),
                       num(spec.mark_radius));

    std::vector<Edge> edges;
    for (const auto& e : v.edges) edges.push_back(e.normalized());
    std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    out += "<g class=\"edges\" stroke=\"#666666\" stroke-width=\"2\">\n";
    for (const auto& e : edges) {
        const auto pa = place(v.find_contact(e.a)->position);
        const auto pb = place(v.find_contact(e.b)->position);
        out += fmt::format("<line class=\"edge\" data-a=\"{}\" data-b=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
                           xml_escape(e.a), xml_escape(e.b), num(pa.x), num(pa.y), num(pb.x), num(pb.y));
    }
    out += "</g>\n";

    std::vector<const Contact*> contacts;
    for (const auto& ct : v.contacts) contacts.push_back(&ct);
    std::sort(contacts.begin(), contacts.end(),
              [](const Contact* a, const Contact* b) { return a->contact_id < b->contact_id; });
    out += "<g class=\"contacts\">\n";
    for (const Contact* ct : contacts) {
        const auto p = place(ct->position);
        const std::string kind = ct->is_human ? "human" : "non-human";
        out += fmt::format("<g class=\"contact {}\" data-id=\"{}\">\n", kind, xml_escape(ct->contact_id));
        if (ct->emoji) {
            out += fmt::format(
                "<text class=\"mark emoji\" data-id=\"{}\" x=\"{}\" y=\"{}\" text-anchor=\"middle\" "
                "dominant-baseline=\"central\" font-size=\"{}\">{}</text>\n",
                xml_escape(ct->contact_id), num(p.x), num(p.y), num(spec.mark_radius * 2.0), xml_escape(*ct->emoji));
        } else {
            out += fmt::format(
                "<circle class=\"mark\" data-id=\"{}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" stroke=\"#333333\"{}/>\n",
                xml_escape(ct->contact_id), num(p.x), num(p.y), num(spec.mark_radius),
                ct->is_human ? "#4a90d9" : "#ffffff", ct->is_human ? "" : " stroke-dasharray=\"3 2\"");
        }
        out += fmt::format("<text class=\"name\" x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"12\">{}</text>\n",
                           num(p.x), num(p.y + spec.mark_radius + 14.0), xml_escape(ct->display_name));
        out += "</g>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

std::string render_timebar(const TimeBar& t, std::span<const LaneLayout> layouts, const RenderSpec& spec) {
    require_valid(t);
    require_valid(spec);

    const auto lanes = t.ordered_lanes();
    auto mismatch = [](std::string entity, std::string detail) {
        throw ValidationError({{std::move(entity), "LAYOUT_MISMATCH", std::move(detail)}});
    };
    if (layouts.size() != lanes.size()) mismatch("timebar", "one lane layout per lane is required");
    for (std::size_t i = 0; i < lanes.size(); ++i) {
        if (layouts[i].lane_id != lanes[i].lane_id) mismatch("lane:" + lanes[i].lane_id, "layout lane order differs");
        for (const auto& f : layouts[i].fragments) {
            const LifeEvent* e = t.find_event(f.event_id);
            if (!e || e->lane_id != lanes[i].lane_id)
                mismatch("event:" + f.event_id, "fragment does not belong to this lane");
        }
    }

    const double height = spec.axis_band + spec.lane_height * static_cast<double>(lanes.size());
    const double span = static_cast<double>(std::max<std::int64_t>(1, day_number(t.domain_end) - day_number(t.birth_date)));
    const double plot_width = spec.timebar_width - spec.gutter;
    auto x_of = [&](const Date& d) {
        return spec.gutter + static_cast<double>(day_number(d) - day_number(t.birth_date)) / span * plot_width;
    };

    std::string out;
    header(out, spec.timebar_width, height);

    out += "<g class=\"lanes\">\n";
    for (std::size_t i = 0; i < lanes.size(); ++i) {
        const double y = spec.axis_band + spec.lane_height * static_cast<double>(i);
        out += fmt::format(
            "<rect class=\"lane{}\" data-lane=\"{}\" x=\"0\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" "
            "stroke=\"#cccccc\"/>\n",
            lanes[i].standard ? "" : " custom", xml_escape(lanes[i].lane_id), num(y), num(spec.timebar_width),
            num(spec.lane_height), i % 2 == 0 ? "#f7f7f7" : "#ffffff");
        out += fmt::format("<text class=\"lane-label\" x=\"8\" y=\"{}\" dominant-baseline=\"central\" font-size=\"14\">{}</text>\n",
                           num(y + spec.lane_height / 2.0), xml_escape(lanes[i].label));
    }
    out += "</g>\n";

    out += "<g class=\"axis\" font-size=\"11\" text-anchor=\"middle\">\n";
    for (const auto& tick : axis_ticks(t)) {
        const double x = x_of(tick.date);
        out += fmt::format("<line class=\"tick\" x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#dddddd\"/>\n",
                           num(x), num(spec.axis_band), num(height));
        out += fmt::format("<text class=\"year\" x=\"{}\" y=\"{}\">{}</text>\n", num(x), num(spec.axis_band * 0.4),
                           tick.year);
        out += fmt::format("<text class=\"age\" x=\"{}\" y=\"{}\">{}</text>\n", num(x), num(spec.axis_band * 0.85),
                           tick.age);
    }
    out += "</g>\n";

    out += "<g class=\"events\">\n";
    for (std::size_t i = 0; i < lanes.size(); ++i) {
        const double band_top = spec.axis_band + spec.lane_height * static_cast<double>(i);
        std::map<std::string, const Fragment*> widest;
        for (const auto& f : layouts[i].fragments) {
            const double x0 = x_of(f.t0);
            const double x1 = x_of(f.t1);
            out += fmt::format(
                "<rect class=\"fragment\" data-event=\"{}\" data-lane=\"{}\" x=\"{}\" y=\"{}\" width=\"{}\" "
                "height=\"{}\" fill=\"#8fbce6\" stroke=\"#2f6ea8\"/>\n",
                xml_escape(f.event_id), xml_escape(lanes[i].lane_id), num(x0), num(band_top + f.y0 * spec.lane_height),
                num(x1 - x0), num((f.y1 - f.y0) * spec.lane_height));
            auto& best = widest[f.event_id];
            if (!best || day_number(f.t1) - day_number(f.t0) > day_number(best->t1) - day_number(best->t0)) best = &f;
        }
        for (const auto& [id, f] : widest) {
            const LifeEvent* e = t.find_event(id);
            const std::string label = e->emoji ? *e->emoji + " " + e->title : e->title;
            out += fmt::format(
                "<text class=\"event-label\" data-event=\"{}\" x=\"{}\" y=\"{}\" text-anchor=\"middle\" "
                "dominant-baseline=\"central\" font-size=\"12\">{}</text>\n",
                xml_escape(id), num((x_of(f->t0) + x_of(f->t1)) / 2.0),
                num(band_top + (f->y0 + f->y1) / 2.0 * spec.lane_height), xml_escape(label));
        }
    }
    out += "</g>\n</svg>\n";
    return out;
}

} // namespace sodia
