#include "sodia/casefile.hpp"

#include "sodia/json_io.hpp"
#include "sodia/text.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

namespace sodia {

const NetMapVersion* CaseFile::find_version(std::string_view id) const {
    for (const auto& v : versions)
        if (v.version_id == id) return &v;
    return nullptr;
}

NetMapVersion* CaseFile::find_version(std::string_view id) {
    for (auto& v : versions)
        if (v.version_id == id) return &v;
    return nullptr;
}

std::vector<Violation> validate_case(const CaseFile& c) {
    std::vector<Violation> out;
    if (c.schema_version != kSchemaVersion)
        out.push_back({"case", "SCHEMA_VERSION", "schema_version must be " + std::to_string(kSchemaVersion)});
    if (c.case_id.empty()) out.push_back({"case", "EMPTY_ID", "case id is empty"});
    if (c.revision < 0) out.push_back({"case", "NEGATIVE_REVISION", "revision must be >= 0"});
    if (text::is_blank(c.client.display_name))
        out.push_back({"client", "EMPTY_NAME", "client display name is required"});
    if (c.client.birth_date && !c.client.birth_date->ok())
        out.push_back({"client", "INVALID_DATE", "client birth date is not a calendar date"});

    for (auto v : validate_sector_config(c.sector_config)) {
        v.entity = "netmap/" + v.entity;
        out.push_back(std::move(v));
    }

    std::set<std::string> ids;
    for (const auto& version : c.versions) {
        if (!ids.insert(version.version_id).second)
            out.push_back({"version:" + version.version_id, "DUPLICATE_VERSION_ID", "version id used twice"});
        for (auto v : validate_version(version)) {
            v.entity = "version:" + version.version_id + "/" + v.entity;
            out.push_back(std::move(v));
        }
    }

    if (c.timebar) {
        for (auto v : validate_timebar(*c.timebar)) {
            v.entity = "timebar/" + v.entity;
            out.push_back(std::move(v));
        }
        if (!c.client.birth_date || *c.client.birth_date != c.timebar->birth_date)
            out.push_back({"timebar", "BIRTH_DATE_MISMATCH", "time bar birth date must equal the client's"});
    }
    return out;
}

namespace {

void require_valid_case(const CaseFile& c) {
    auto violations = validate_case(c);
    if (!violations.empty()) throw ValidationError(std::move(violations));
}

using Migration = void (*)(Json&);

// kMigrations[i] upgrades a document from schema i + 1 to i + 2.
constexpr std::array<Migration, kSchemaVersion - 1> kMigrations{};

void migrate(Json& doc, std::int64_t from) {
    for (std::int64_t v = from; v < kSchemaVersion; ++v) kMigrations[static_cast<std::size_t>(v - 1)](doc);
}

CaseFile bumped(CaseFile c) {
    ++c.revision;
    require_valid_case(c);
    return c;
}

NetMapVersion& version_ref(CaseFile& c, std::string_view vid) {
    NetMapVersion* v = c.find_version(vid);
    if (!v) throw InvalidReference("unknown network-map version '" + std::string(vid) + "'");
    return *v;
}

TimeBar& timebar_ref(CaseFile& c) {
    if (!c.timebar) throw InvalidReference("case has no time bar");
    return *c.timebar;
}

} // namespace

std::string save(const CaseFile& c) {
    require_valid_case(c);
    return canonical(Json(c));
}

CaseFile load(std::string_view bytes) {
    Json doc = parse_json(bytes);
    if (!doc.is_object()) throw MalformedDocument("case document must be a JSON object");

    auto it = doc.find("schema_version");
    if (it == doc.end() || !it->is_number_integer()) throw MalformedDocument("missing integer 'schema_version'");
    const auto schema = it->get<std::int64_t>();
    if (schema > kSchemaVersion)
        throw UnsupportedSchema("schema_version " + std::to_string(schema) + " is newer than supported (" +
                                    std::to_string(kSchemaVersion) + ")",
                                schema);
    if (schema < 1) throw MalformedDocument("schema_version must be >= 1");
    migrate(doc, schema);
    doc["schema_version"] = kSchemaVersion;

    CaseFile c = casefile_from_json(doc);
    auto violations = validate_case(c);
    if (!violations.empty()) throw InvalidDocument(std::move(violations));
    return c;
}

CaseFile new_version(const CaseFile& c, const std::optional<std::string>& from, std::string label,
                     Timestamp created_at) {
    NetMapVersion v;
    if (from) {
        const NetMapVersion* src = c.find_version(*from);
        if (!src) throw InvalidReference("unknown network-map version '" + *from + "'");
        v = *src;
    } else {
        v.sector_config = c.sector_config;
    }
    v.version_id = fresh_id("v", [&](const std::string& id) { return c.find_version(id) != nullptr; });
    v.label = std::move(label);
    v.created_at = created_at;

    CaseFile out = c;
    out.versions.push_back(std::move(v));
    return bumped(std::move(out));
}

CaseFile replace_version(const CaseFile& c, std::string_view version_id, NetMapVersion v) {
    if (v.version_id != version_id)
        throw ValidationError({{"version:" + v.version_id, "ID_MISMATCH", "body version_id must match the target"}});
    CaseFile out = c;
    version_ref(out, version_id) = std::move(v);
    return bumped(std::move(out));
}

CaseFile add_contact(const CaseFile& c, std::string_view version_id, Contact contact) {
    CaseFile out = c;
    version_ref(out, version_id).contacts.push_back(std::move(contact));
    return bumped(std::move(out));
}

CaseFile update_contact(const CaseFile& c, std::string_view version_id, Contact contact) {
    CaseFile out = c;
    Contact* existing = version_ref(out, version_id).find_contact(contact.contact_id);
    if (!existing) throw InvalidReference("unknown contact '" + contact.contact_id + "'");
    *existing = std::move(contact);
    return bumped(std::move(out));
}

CaseFile remove_contact(const CaseFile& c, std::string_view version_id, std::string_view contact_id) {
    CaseFile out = c;
    auto& v = version_ref(out, version_id);
    if (!v.find_contact(contact_id)) throw InvalidReference("unknown contact '" + std::string(contact_id) + "'");
    std::erase_if(v.contacts, [&](const Contact& x) { return x.contact_id == contact_id; });
    std::erase_if(v.edges, [&](const Edge& e) { return e.a == contact_id || e.b == contact_id; });
    return bumped(std::move(out));
}

CaseFile add_edge(const CaseFile& c, std::string_view version_id, Edge e) {
    CaseFile out = c;
    version_ref(out, version_id).edges.push_back(std::move(e));
    return bumped(std::move(out));
}

CaseFile remove_edge(const CaseFile& c, std::string_view version_id, const Edge& e) {
    CaseFile out = c;
    auto& edges = version_ref(out, version_id).edges;
    const auto before = edges.size();
    std::erase_if(edges, [&](const Edge& x) { return x.same_pair(e); });
    if (edges.size() == before) throw InvalidReference("unknown edge " + e.a + "-" + e.b);
    return bumped(std::move(out));
}

CaseFile set_timebar(const CaseFile& c, TimeBar t) {
    CaseFile out = c;
    if (!out.client.birth_date) out.client.birth_date = t.birth_date;
    out.timebar = std::move(t);
    return bumped(std::move(out));
}

CaseFile add_event(const CaseFile& c, LifeEvent e) {
    CaseFile out = c;
    timebar_ref(out).events.push_back(std::move(e));
    return bumped(std::move(out));
}

CaseFile update_event(const CaseFile& c, LifeEvent e) {
    CaseFile out = c;
    for (auto& existing : timebar_ref(out).events) {
        if (existing.event_id == e.event_id) {
            existing = std::move(e);
            return bumped(std::move(out));
        }
    }
    throw InvalidReference("unknown event '" + e.event_id + "'");
}

CaseFile remove_event(const CaseFile& c, std::string_view event_id) {
    CaseFile out = c;
    auto& events = timebar_ref(out).events;
    const auto before = events.size();
    std::erase_if(events, [&](const LifeEvent& e) { return e.event_id == event_id; });
    if (events.size() == before) throw InvalidReference("unknown event '" + std::string(event_id) + "'");
    return bumped(std::move(out));
}

CaseFile add_lane(const CaseFile& c, std::string lane_id, std::string label) {
    CaseFile out = c;
    out.timebar = add_custom_lane(timebar_ref(out), std::move(lane_id), std::move(label));
    return bumped(std::move(out));
}

CaseFile rename_lane(const CaseFile& c, std::string_view lane_id, std::string label) {
    CaseFile out = c;
    out.timebar = rename_lane(timebar_ref(out), lane_id, std::move(label));
    return bumped(std::move(out));
}

CaseFile remove_lane(const CaseFile& c, std::string_view lane_id) {
    CaseFile out = c;
    out.timebar = remove_lane(timebar_ref(out), lane_id);
    return bumped(std::move(out));
}

// --- diff ---

bool VersionDiff::empty() const {
    return added.empty() && removed.empty() && moved.empty() && metadata_changed.empty() && edges_added.empty() &&
           edges_removed.empty();
}

namespace {

template <typename T>
FieldValue field(const std::optional<T>& v) {
    if (v) return *v;
    return std::monostate{};
}

// Metadata fields in name order.
std::vector<std::pair<std::string, FieldValue>> metadata(const Contact& c) {
    return {
        {"age", field(c.age)},
        {"display_name", c.display_name},
        {"emoji", field(c.emoji)},
        {"gender", field(c.gender)},
        {"is_human", c.is_human},
        {"role", field(c.role)},
    };
}

template <typename T>
std::optional<T> optional_from(const FieldValue& v, const std::string& name) {
    if (std::holds_alternative<std::monostate>(v)) return std::nullopt;
    if (const T* x = std::get_if<T>(&v)) return *x;
    throw ValidationError({{"field:" + name, "FIELD_TYPE", "unexpected value type"}});
}

template <typename T>
T required_from(const FieldValue& v, const std::string& name) {
    if (const T* x = std::get_if<T>(&v)) return *x;
    throw ValidationError({{"field:" + name, "FIELD_TYPE", "unexpected value type"}});
}

void set_field(Contact& c, const std::string& name, const FieldValue& v) {
    if (name == "display_name") c.display_name = required_from<std::string>(v, name);
    else if (name == "gender") c.gender = optional_from<std::string>(v, name);
    else if (name == "role") c.role = optional_from<std::string>(v, name);
    else if (name == "age") c.age = optional_from<std::int64_t>(v, name);
    else if (name == "is_human") c.is_human = required_from<bool>(v, name);
    else if (name == "emoji") c.emoji = optional_from<std::string>(v, name);
    else throw ValidationError({{"field:" + name, "UNKNOWN_FIELD", "not a contact metadata field"}});
}

std::set<std::pair<std::string, std::string>> edge_set(const NetMapVersion& v) {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& e : v.edges) {
        const Edge n = e.normalized();
        out.emplace(n.a, n.b);
    }
    return out;
}

} // namespace

VersionDiff diff_versions(const NetMapVersion& a, const NetMapVersion& b) {
    std::map<std::string, const Contact*> before, after;
    for (const auto& c : a.contacts) before.emplace(c.contact_id, &c);
    for (const auto& c : b.contacts) after.emplace(c.contact_id, &c);

    VersionDiff d;
    for (const auto& [id, old] : before) {
        auto it = after.find(id);
        if (it == after.end()) {
            d.removed.push_back(id);
            continue;
        }
        const Contact& now = *it->second;
        if (!(old->position == now.position)) d.moved.push_back({id, old->position, now.position});
        const auto old_fields = metadata(*old);
        const auto new_fields = metadata(now);
        for (std::size_t i = 0; i < old_fields.size(); ++i)
            if (old_fields[i].second != new_fields[i].second)
                d.metadata_changed.push_back({id, old_fields[i].first, old_fields[i].second, new_fields[i].second});
    }
    for (const auto& [id, c] : after)
        if (!before.contains(id)) d.added.push_back(*c);

    const auto ea = edge_set(a);
    const auto eb = edge_set(b);
    for (const auto& [x, y] : eb)
        if (!ea.contains({x, y})) d.edges_added.push_back({x, y});
    for (const auto& [x, y] : ea)
        if (!eb.contains({x, y})) d.edges_removed.push_back({x, y});
    return d;
}

NetMapVersion apply_diff(const NetMapVersion& a, const VersionDiff& d) {
    NetMapVersion out = a;
    for (const auto& id : d.removed) {
        if (!out.find_contact(id)) throw InvalidReference("diff removes unknown contact '" + id + "'");
        std::erase_if(out.contacts, [&](const Contact& c) { return c.contact_id == id; });
    }
    for (const auto& m : d.moved) {
        Contact* c = out.find_contact(m.contact_id);
        if (!c) throw InvalidReference("diff moves unknown contact '" + m.contact_id + "'");
        c->position = m.after;
    }
    for (const auto& f : d.metadata_changed) {
        Contact* c = out.find_contact(f.contact_id);
        if (!c) throw InvalidReference("diff edits unknown contact '" + f.contact_id + "'");
        set_field(*c, f.field, f.after);
    }
    for (const auto& c : d.added) out.contacts.push_back(c);

    for (const auto& e : d.edges_removed) std::erase_if(out.edges, [&](const Edge& x) { return x.same_pair(e); });
    for (const auto& e : d.edges_added) out.edges.push_back(e);
    return out;
}

} // namespace sodia
