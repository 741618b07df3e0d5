#pragma once

#include "sodia/casefile.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

namespace sodia {

struct CaseSummary {
    std::string case_id;
    std::string display_name;
    std::int64_t revision = 0;
    std::size_t version_count = 0;

    bool operator==(const CaseSummary&) const = default;
};

/// Directory-backed case storage: one `<case_id>.sodia.json` per case plus a
/// derived `index.json`. Reads return immutable snapshots; writes to one case
/// are serialized and guarded by the expected revision.
class CaseStore {
public:
    explicit CaseStore(std::filesystem::path dir);

    CaseStore(const CaseStore&) = delete;
    CaseStore& operator=(const CaseStore&) = delete;

    const std::filesystem::path& directory() const noexcept { return dir_; }

    /// Throws Conflict if the id is taken, ValidationError if invalid.
    std::shared_ptr<const CaseFile> create(CaseFile c);

    /// Throws InvalidReference for unknown ids.
    std::shared_ptr<const CaseFile> get(const std::string& case_id) const;

    std::vector<CaseSummary> list() const;

    using Mutation = std::function<CaseFile(const CaseFile&)>;

    /// Applies `mutate` when the stored revision equals `expected_revision`
    /// (Conflict otherwise). The mutation must return revision + 1.
    std::shared_ptr<const CaseFile> update(const std::string& case_id, std::int64_t expected_revision,
                                           const Mutation& mutate);

    void remove(const std::string& case_id, std::int64_t expected_revision);

    std::filesystem::path path_for(const std::string& case_id) const;

private:
    struct Slot {
        std::mutex write;
        std::shared_ptr<const CaseFile> current;
    };

    std::shared_ptr<Slot> slot(const std::string& case_id) const;
    void write_file(const std::filesystem::path& path, const std::string& bytes) const;
    void write_index() const;

    std::filesystem::path dir_;
    mutable std::shared_mutex map_mutex_;
    std::map<std::string, std::shared_ptr<Slot>> slots_;
    mutable std::mutex index_mutex_;
};

/// Case ids become file names, so they are restricted to [A-Za-z0-9_-], 1..64 chars.
bool is_valid_case_id(std::string_view id);

} // namespace sodia
