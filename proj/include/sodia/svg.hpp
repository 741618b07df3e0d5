#pragma once

#include "sodia/netmap.hpp"
#include "sodia/timebar.hpp"
#include "sodia/timebar_layout.hpp"

#include <span>
#include <string>

namespace sodia {

struct RenderSpec {
    // network map
    double netmap_size = 1000.0;
    double center = 500.0;
    double plot_radius = 450.0;
    double mark_radius = 12.0;
    // time bar
    double timebar_width = 1200.0;
    double lane_height = 120.0;
    double gutter = 140.0;
    double axis_band = 40.0;

    bool operator==(const RenderSpec&) const = default;
};

/// Throws OutOfDomain unless every dimension is positive and fits.
void require_valid(const RenderSpec& spec);

/// SVG 1.1 document of the map: sector boundaries and labels, guide circles at
/// thirds of the plot radius, the ego, edges, then contacts sorted by id.
/// Contact groups carry `data-id`; marks are circles, or text when an emoji is set.
std::string render_netmap(const NetMapVersion& v, const RenderSpec& spec);

/// SVG 1.1 document of the time bar. Dates map linearly from birth_date to
/// domain_end onto [gutter, width]; fragments become rectangles tagged with
/// `data-event` and `data-lane`. Throws ValidationError when `layouts` does
/// not belong to `t`.
std::string render_timebar(const TimeBar& t, std::span<const LaneLayout> layouts, const RenderSpec& spec);

std::string xml_escape(std::string_view s);

} // namespace sodia
