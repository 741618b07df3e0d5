#include "sodia/json_io.hpp"

namespace sodia {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw MalformedDocument(what); }

const Json& member(const Json& j, const char* key) {
    if (!j.is_object()) malformed(std::string("expected an object holding '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) malformed(std::string("missing field '") + key + "'");
    return *it;
}

const Json* optional_member(const Json& j, const char* key) {
    if (!j.is_object()) malformed(std::string("expected an object holding '") + key + "'");
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return nullptr;
    return &*it;
}

std::string as_string(const Json& v, const char* key) {
    if (!v.is_string()) malformed(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

double as_real(const Json& v, const char* key) {
    if (!v.is_number()) malformed(std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

std::int64_t as_int(const Json& v, const char* key) {
    if (!v.is_number_integer()) malformed(std::string("field '") + key + "' must be an integer");
    return v.get<std::int64_t>();
}

bool as_bool(const Json& v, const char* key) {
    if (!v.is_boolean()) malformed(std::string("field '") + key + "' must be a boolean");
    return v.get<bool>();
}

Date as_date(const Json& v, const char* key) {
    auto d = parse_date(as_string(v, key));
    if (!d) malformed(std::string("field '") + key + "' must be a YYYY-MM-DD date");
    return *d;
}

const Json& as_array(const Json& v, const char* key) {
    if (!v.is_array()) malformed(std::string("field '") + key + "' must be an array");
    return v;
}

std::string get_string(const Json& j, const char* key) { return as_string(member(j, key), key); }
double get_real(const Json& j, const char* key) { return as_real(member(j, key), key); }
std::int64_t get_int(const Json& j, const char* key) { return as_int(member(j, key), key); }
bool get_bool(const Json& j, const char* key) { return as_bool(member(j, key), key); }
Date get_date(const Json& j, const char* key) { return as_date(member(j, key), key); }

std::optional<std::string> get_opt_string(const Json& j, const char* key) {
    if (const Json* v = optional_member(j, key)) return as_string(*v, key);
    return std::nullopt;
}

std::optional<std::int64_t> get_opt_int(const Json& j, const char* key) {
    if (const Json* v = optional_member(j, key)) return as_int(*v, key);
    return std::nullopt;
}

std::optional<Date> get_opt_date(const Json& j, const char* key) {
    if (const Json* v = optional_member(j, key)) return as_date(*v, key);
    return std::nullopt;
}

template <typename T>
Json opt(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

Json opt_date(const std::optional<Date>& d) { return d ? Json(format_date(*d)) : Json(nullptr); }

template <typename T, typename F>
std::vector<T> array_of(const Json& j, const char* key, F&& read) {
    std::vector<T> out;
    for (const auto& item : as_array(member(j, key), key)) out.push_back(read(item));
    return out;
}

Json field_value_json(const FieldValue& v) {
    return std::visit(
        [](const auto& x) -> Json {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, std::monostate>)
                return nullptr;
            else
                return x;
        },
        v);
}

FieldValue field_value_from_json(const Json& j) {
    if (j.is_null()) return std::monostate{};
    if (j.is_string()) return j.get<std::string>();
    if (j.is_boolean()) return j.get<bool>();
    if (j.is_number_integer()) return j.get<std::int64_t>();
    malformed("field change values must be null, string, integer or boolean");
}

Json metric_value_json(const MetricValue& v) {
    return std::visit(
        [](const auto& x) -> Json {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, std::monostate>)
                return nullptr;
            else
                return x;
        },
        v);
}

} // namespace

std::string canonical(const Json& j) {
    try {
        return j.dump(2) + "\n";
    } catch (const Json::type_error& e) {
        throw ValidationError(std::string("text is not valid UTF-8: ") + e.what(),
                              {{"document", "INVALID_UTF8", "all text must be valid UTF-8"}});
    }
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw MalformedDocument(std::string("malformed JSON: ") + e.what());
    }
}

void to_json(Json& j, const Violation& v) { j = Json{{"entity", v.entity}, {"rule", v.rule}, {"detail", v.detail}}; }

void to_json(Json& j, const Sector& s) { j = Json{{"id", s.id}, {"label", s.label}}; }

void to_json(Json& j, const SectorConfig& c) { j = Json{{"sectors", c.sectors}}; }

void to_json(Json& j, const Position& p) {
    j = Json{{"sector_id", p.sector_id}, {"radius", p.radius}, {"angle_frac", p.angle_frac}};
}

void to_json(Json& j, const Contact& c) {
    j = Json{{"contact_id", c.contact_id}, {"display_name", c.display_name}, {"gender", opt(c.gender)},
             {"role", opt(c.role)},         {"age", opt(c.age)},                 {"is_human", c.is_human},
             {"emoji", opt(c.emoji)},       {"position", c.position}};
}

void to_json(Json& j, const Edge& e) { j = Json{{"a", e.a}, {"b", e.b}}; }

void to_json(Json& j, const NetMapVersion& v) {
    j = Json{{"version_id", v.version_id},
             {"label", v.label},
             {"created_at", format_timestamp(v.created_at)},
             {"sector_config", v.sector_config},
             {"contacts", v.contacts},
             {"edges", v.edges}};
}

void to_json(Json& j, const Lane& l) {
    j = Json{{"lane_id", l.lane_id}, {"label", l.label}, {"standard", l.standard}, {"order_index", l.order_index}};
}

void to_json(Json& j, const LifeEvent& e) {
    j = Json{{"event_id", e.event_id},       {"lane_id", e.lane_id}, {"start", format_date(e.start)},
             {"end", opt_date(e.end)},       {"title", e.title},     {"note", e.note},
             {"emoji", opt(e.emoji)}};
}

void to_json(Json& j, const TimeBar& t) {
    j = Json{{"birth_date", format_date(t.birth_date)},
             {"domain_end", format_date(t.domain_end)},
             {"lanes", t.lanes},
             {"events", t.events}};
}

void to_json(Json& j, const Client& c) {
    j = Json{{"display_name", c.display_name}, {"gender", opt(c.gender)}, {"birth_date", opt_date(c.birth_date)}};
}

void to_json(Json& j, const CaseFile& c) {
    j = Json{{"schema_version", c.schema_version},
             {"case_id", c.case_id},
             {"revision", c.revision},
             {"client", c.client},
             {"netmap", Json{{"sector_config", c.sector_config}, {"versions", c.versions}}},
             {"timebar", c.timebar ? Json(*c.timebar) : Json(nullptr)}};
}

void to_json(Json& j, const MetricsReport& r) {
    j = Json{{"network_size", r.network_size},
             {"per_sector_counts", r.per_sector_counts},
             {"occupied_sector_fraction", r.occupied_sector_fraction},
             {"mean_closeness", opt(r.mean_closeness)},
             {"alter_density", opt(r.alter_density)},
             {"isolated_alter_count", r.isolated_alter_count},
             {"gender_counts", r.gender_counts},
             {"non_human_count", r.non_human_count}};
}

void to_json(Json& j, const LayoutParams& p) {
    j = Json{{"mark_radius", p.mark_radius},
             {"radius_tolerance", p.radius_tolerance},
             {"min_separation", p.min_separation()}};
}

void to_json(Json& j, const LayoutSuggestion& s) {
    Json moves = Json::object();
    for (const auto& [id, pos] : s.moves) moves[id] = pos;
    Json unresolved = Json::array();
    for (const auto& [a, b] : s.unresolved) unresolved.push_back(Json::array({a, b}));
    j = Json{{"moves", moves}, {"unresolved", unresolved}};
}

void to_json(Json& j, const Fragment& f) {
    j = Json{{"event_id", f.event_id}, {"t0", format_date(f.t0)}, {"t1", format_date(f.t1)},
             {"y0", f.y0},             {"y1", f.y1}};
}

void to_json(Json& j, const LaneLayout& l) { j = Json{{"lane_id", l.lane_id}, {"fragments", l.fragments}}; }

void to_json(Json& j, const AxisTick& t) {
    j = Json{{"date", format_date(t.date)}, {"year", t.year}, {"age", t.age}};
}

void to_json(Json& j, const VersionDiff& d) {
    Json moved = Json::array();
    for (const auto& m : d.moved)
        moved.push_back(Json{{"contact_id", m.contact_id}, {"before", m.before}, {"after", m.after}});
    Json changed = Json::array();
    for (const auto& c : d.metadata_changed)
        changed.push_back(Json{{"contact_id", c.contact_id},
                               {"field", c.field},
                               {"before", field_value_json(c.before)},
                               {"after", field_value_json(c.after)}});
    j = Json{{"added", d.added},
             {"removed", d.removed},
             {"moved", moved},
             {"metadata_changed", changed},
             {"edges_added", d.edges_added},
             {"edges_removed", d.edges_removed}};
}

Json metrics_delta_json(const MetricsDelta& d) {
    Json out = Json::object();
    for (const auto& [name, change] : d)
        out[name] = Json{{"before", metric_value_json(change.first)}, {"after", metric_value_json(change.second)}};
    return out;
}

Sector sector_from_json(const Json& j) { return Sector{get_string(j, "id"), get_string(j, "label")}; }

SectorConfig sector_config_from_json(const Json& j) {
    return SectorConfig{array_of<Sector>(j, "sectors", sector_from_json)};
}

Position position_from_json(const Json& j) {
    return Position{get_string(j, "sector_id"), get_real(j, "radius"), get_real(j, "angle_frac")};
}

Contact contact_from_json(const Json& j) {
    Contact c;
    c.contact_id = get_string(j, "contact_id");
    c.display_name = get_string(j, "display_name");
    c.gender = get_opt_string(j, "gender");
    c.role = get_opt_string(j, "role");
    c.age = get_opt_int(j, "age");
    c.is_human = get_bool(j, "is_human");
    c.emoji = get_opt_string(j, "emoji");
    c.position = position_from_json(member(j, "position"));
    return c;
}

Edge edge_from_json(const Json& j) { return Edge{get_string(j, "a"), get_string(j, "b")}; }

NetMapVersion version_from_json(const Json& j) {
    NetMapVersion v;
    v.version_id = get_string(j, "version_id");
    v.label = get_string(j, "label");
    auto ts = parse_timestamp(get_string(j, "created_at"));
    if (!ts) malformed("field 'created_at' must be an RFC 3339 UTC timestamp (YYYY-MM-DDTHH:MM:SSZ)");
    v.created_at = *ts;
    v.sector_config = sector_config_from_json(member(j, "sector_config"));
    v.contacts = array_of<Contact>(j, "contacts", contact_from_json);
    v.edges = array_of<Edge>(j, "edges", edge_from_json);
    return v;
}

Lane lane_from_json(const Json& j) {
    return Lane{get_string(j, "lane_id"), get_string(j, "label"), get_bool(j, "standard"), get_int(j, "order_index")};
}

LifeEvent event_from_json(const Json& j) {
    LifeEvent e;
    e.event_id = get_string(j, "event_id");
    e.lane_id = get_string(j, "lane_id");
    e.start = get_date(j, "start");
    e.end = get_opt_date(j, "end");
    e.title = get_string(j, "title");
    if (const Json* note = optional_member(j, "note")) e.note = as_string(*note, "note");
    e.emoji = get_opt_string(j, "emoji");
    return e;
}

TimeBar timebar_from_json(const Json& j) {
    TimeBar t;
    t.birth_date = get_date(j, "birth_date");
    t.domain_end = get_date(j, "domain_end");
    t.lanes = array_of<Lane>(j, "lanes", lane_from_json);
    t.events = array_of<LifeEvent>(j, "events", event_from_json);
    return t;
}

Client client_from_json(const Json& j) {
    return Client{get_string(j, "display_name"), get_opt_string(j, "gender"), get_opt_date(j, "birth_date")};
}

CaseFile casefile_from_json(const Json& j) {
    CaseFile c;
    c.schema_version = get_int(j, "schema_version");
    c.case_id = get_string(j, "case_id");
    c.revision = get_int(j, "revision");
    c.client = client_from_json(member(j, "client"));
    const Json& netmap = member(j, "netmap");
    c.sector_config = sector_config_from_json(member(netmap, "sector_config"));
    c.versions = array_of<NetMapVersion>(netmap, "versions", version_from_json);
    if (const Json* t = optional_member(j, "timebar")) c.timebar = timebar_from_json(*t);
    return c;
}

LayoutParams layout_params_from_json(const Json& j) {
    LayoutParams p;
    if (j.is_null()) return p;
    if (const Json* v = optional_member(j, "mark_radius")) p.mark_radius = as_real(*v, "mark_radius");
    if (const Json* v = optional_member(j, "radius_tolerance")) p.radius_tolerance = as_real(*v, "radius_tolerance");
    return p;
}

LayoutSuggestion layout_suggestion_from_json(const Json& j) {
    LayoutSuggestion s;
    const Json& moves = member(j, "moves");
    if (!moves.is_object()) malformed("field 'moves' must be an object");
    for (const auto& [id, pos] : moves.items()) s.moves.emplace(id, position_from_json(pos));
    for (const auto& pair : as_array(member(j, "unresolved"), "unresolved")) {
        if (!pair.is_array() || pair.size() != 2) malformed("unresolved entries must be [a, b] pairs");
        s.unresolved.emplace_back(as_string(pair[0], "unresolved"), as_string(pair[1], "unresolved"));
    }
    return s;
}

VersionDiff version_diff_from_json(const Json& j) {
    VersionDiff d;
    d.added = array_of<Contact>(j, "added", contact_from_json);
    d.removed = array_of<std::string>(j, "removed", [](const Json& v) { return as_string(v, "removed"); });
    d.moved = array_of<ContactMove>(j, "moved", [](const Json& m) {
        return ContactMove{get_string(m, "contact_id"), position_from_json(member(m, "before")),
                           position_from_json(member(m, "after"))};
    });
    d.metadata_changed = array_of<FieldChange>(j, "metadata_changed", [](const Json& c) {
        return FieldChange{get_string(c, "contact_id"), get_string(c, "field"),
                           field_value_from_json(member(c, "before")), field_value_from_json(member(c, "after"))};
    });
    d.edges_added = array_of<Edge>(j, "edges_added", edge_from_json);
    d.edges_removed = array_of<Edge>(j, "edges_removed", edge_from_json);
    return d;
}

} // namespace sodia
