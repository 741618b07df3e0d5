#pragma once

#include "sodia/netmap.hpp"
#include "sodia/timebar.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sodia {

inline constexpr std::int64_t kSchemaVersion = 1;
inline constexpr std::string_view kCaseFileExtension = ".sodia.json";

struct Client {
    std::string display_name;
    std::optional<std::string> gender;
    std::optional<Date> birth_date;

    bool operator==(const Client&) const = default;
};

/// One self-contained case document.
struct CaseFile {
    std::int64_t schema_version = kSchemaVersion;
    std::string case_id;
    std::int64_t revision = 0;
    Client client;
    SectorConfig sector_config = default_sector_config();   // used for blank versions
    std::vector<NetMapVersion> versions;
    std::optional<TimeBar> timebar;

    const NetMapVersion* find_version(std::string_view id) const;
    NetMapVersion* find_version(std::string_view id);

    bool operator==(const CaseFile&) const = default;
};

std::vector<Violation> validate_case(const CaseFile& c);

/// Canonical JSON: sorted keys, model-ordered arrays, ISO dates, RFC 3339 UTC
/// timestamps, UTF-8, trailing newline. Throws ValidationError for invalid cases.
std::string save(const CaseFile& c);

/// Throws MalformedDocument, UnsupportedSchema or InvalidDocument.
CaseFile load(std::string_view bytes);

// Mutations. Each returns the updated case with revision + 1 and leaves the
// argument untouched; results are validated (ValidationError) before return.

CaseFile new_version(const CaseFile& c, const std::optional<std::string>& from, std::string label,
                     Timestamp created_at);
CaseFile replace_version(const CaseFile& c, std::string_view version_id, NetMapVersion v);
CaseFile add_contact(const CaseFile& c, std::string_view version_id, Contact contact);
CaseFile update_contact(const CaseFile& c, std::string_view version_id, Contact contact);
/// Also drops edges incident to the contact.
CaseFile remove_contact(const CaseFile& c, std::string_view version_id, std::string_view contact_id);
CaseFile add_edge(const CaseFile& c, std::string_view version_id, Edge e);
CaseFile remove_edge(const CaseFile& c, std::string_view version_id, const Edge& e);
/// Adopts the bar's birth date as the client's when the client has none.
CaseFile set_timebar(const CaseFile& c, TimeBar t);
CaseFile add_event(const CaseFile& c, LifeEvent e);
CaseFile update_event(const CaseFile& c, LifeEvent e);
CaseFile remove_event(const CaseFile& c, std::string_view event_id);
CaseFile add_lane(const CaseFile& c, std::string lane_id, std::string label);
CaseFile rename_lane(const CaseFile& c, std::string_view lane_id, std::string label);
CaseFile remove_lane(const CaseFile& c, std::string_view lane_id);

/// Smallest "<prefix><n>" (n >= 1) not rejected by `taken`.
template <typename Taken>
std::string fresh_id(std::string_view prefix, Taken&& taken) {
    for (std::int64_t n = 1;; ++n) {
        std::string id = std::string(prefix) + std::to_string(n);
        if (!taken(id)) return id;
    }
}

// --- version diff ---

using FieldValue = std::variant<std::monostate, std::string, std::int64_t, bool>;

struct ContactMove {
    std::string contact_id;
    Position before;
    Position after;

    bool operator==(const ContactMove&) const = default;
};

struct FieldChange {
    std::string contact_id;
    std::string field;   // display_name, gender, role, age, is_human, emoji
    FieldValue before;
    FieldValue after;

    bool operator==(const FieldChange&) const = default;
};

struct VersionDiff {
    std::vector<Contact> added;
    std::vector<std::string> removed;
    std::vector<ContactMove> moved;
    std::vector<FieldChange> metadata_changed;
    std::vector<Edge> edges_added;     // normalized endpoints
    std::vector<Edge> edges_removed;

    bool empty() const;
    bool operator==(const VersionDiff&) const = default;
};

/// Contacts are matched by id. Lists are ordered by contact id (then field
/// name); edge lists by normalized endpoint pair.
VersionDiff diff_versions(const NetMapVersion& a, const NetMapVersion& b);

/// Patch: removes, moves and edits in place (a's order kept), then appends the
/// added contacts and edges in diff order. Version metadata is left as in `a`.
NetMapVersion apply_diff(const NetMapVersion& a, const VersionDiff& d);

} // namespace sodia
