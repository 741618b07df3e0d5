#include "sodia/store.hpp"

#include "sodia/json_io.hpp"

#include <fstream>
#include <sstream>

namespace sodia {

namespace fs = std::filesystem;

bool is_valid_case_id(std::string_view id) {
    if (id.empty() || id.size() > 64) return false;
    for (char ch : id) {
        const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
                        ch == '-' || ch == '_';
        if (!ok) return false;
    }
    return true;
}

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

CaseStore::CaseStore(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create data directory " + dir_.string() + ": " + ec.message());

    const std::string ext{kCaseFileExtension};
    for (const auto& entry : fs::directory_iterator(dir_)) {
        const std::string name = entry.path().filename().string();
        if (!entry.is_regular_file() || name.size() <= ext.size() ||
            name.compare(name.size() - ext.size(), ext.size(), ext) != 0)
            continue;
        auto c = std::make_shared<const CaseFile>(load(read_file(entry.path())));
        auto s = std::make_shared<Slot>();
        s->current = c;
        slots_.emplace(c->case_id, std::move(s));
    }
    write_index();
}

fs::path CaseStore::path_for(const std::string& case_id) const {
    return dir_ / (case_id + std::string(kCaseFileExtension));
}

std::shared_ptr<CaseStore::Slot> CaseStore::slot(const std::string& case_id) const {
    std::shared_lock lock(map_mutex_);
    auto it = slots_.find(case_id);
    if (it == slots_.end()) throw InvalidReference("unknown case '" + case_id + "'");
    return it->second;
}

void CaseStore::write_file(const fs::path& path, const std::string& bytes) const {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << bytes;
        if (!out.flush()) throw IoError("cannot write " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot replace " + path.string() + ": " + ec.message());
}

void CaseStore::write_index() const {
    std::lock_guard lock(index_mutex_);
    Json index = Json::array();
    for (const auto& s : list())
        index.push_back(Json{{"case_id", s.case_id},
                             {"display_name", s.display_name},
                             {"revision", s.revision},
                             {"version_count", s.version_count}});
    write_file(dir_ / "index.json", canonical(index));
}

std::shared_ptr<const CaseFile> CaseStore::create(CaseFile c) {
    if (!is_valid_case_id(c.case_id))
        throw ValidationError({{"case", "INVALID_CASE_ID", "case ids use 1-64 characters of [A-Za-z0-9_-]"}});
    const std::string bytes = save(c);

    auto s = std::make_shared<Slot>();
    std::lock_guard write(s->write);
    {
        std::unique_lock lock(map_mutex_);
        if (slots_.contains(c.case_id)) throw Conflict("case '" + c.case_id + "' already exists", -1);
        slots_.emplace(c.case_id, s);
    }
    try {
        write_file(path_for(c.case_id), bytes);
    } catch (...) {
        std::unique_lock lock(map_mutex_);
        slots_.erase(c.case_id);
        throw;
    }
    auto snapshot = std::make_shared<const CaseFile>(std::move(c));
    std::atomic_store(&s->current, snapshot);
    write_index();
    return snapshot;
}

std::shared_ptr<const CaseFile> CaseStore::get(const std::string& case_id) const {
    auto s = slot(case_id);
    auto current = std::atomic_load(&s->current);
    if (!current) throw InvalidReference("unknown case '" + case_id + "'");
    return current;
}

std::vector<CaseSummary> CaseStore::list() const {
    std::vector<std::shared_ptr<Slot>> all;
    {
        std::shared_lock lock(map_mutex_);
        for (const auto& [id, s] : slots_) all.push_back(s);
    }
    std::vector<CaseSummary> out;
    for (const auto& s : all) {
        auto c = std::atomic_load(&s->current);
        if (c) out.push_back({c->case_id, c->client.display_name, c->revision, c->versions.size()});
    }
    return out;
}

std::shared_ptr<const CaseFile> CaseStore::update(const std::string& case_id, std::int64_t expected_revision,
                                                  const Mutation& mutate) {
    auto s = slot(case_id);
    std::lock_guard write(s->write);
    auto current = std::atomic_load(&s->current);
    if (!current) throw InvalidReference("unknown case '" + case_id + "'");
    if (current->revision != expected_revision)
        throw Conflict("stale revision " + std::to_string(expected_revision) + ", case is at " +
                           std::to_string(current->revision),
                       current->revision);

    CaseFile next = mutate(*current);
    if (next.case_id != case_id || next.revision != current->revision + 1)
        throw Error("mutation must keep the case id and advance the revision by one");
    write_file(path_for(case_id), save(next));

    auto snapshot = std::make_shared<const CaseFile>(std::move(next));
    std::atomic_store(&s->current, snapshot);
    write_index();
    return snapshot;
}

void CaseStore::remove(const std::string& case_id, std::int64_t expected_revision) {
    auto s = slot(case_id);
    {
        std::lock_guard write(s->write);
        auto current = std::atomic_load(&s->current);
        if (!current) throw InvalidReference("unknown case '" + case_id + "'");
        if (current->revision != expected_revision)
            throw Conflict("stale revision " + std::to_string(expected_revision), current->revision);

        std::error_code ec;
        fs::remove(path_for(case_id), ec);
        if (ec) throw IoError("cannot delete case file: " + ec.message());
        std::atomic_store(&s->current, std::shared_ptr<const CaseFile>{});
        std::unique_lock lock(map_mutex_);
        slots_.erase(case_id);
    }
    write_index();
}

} // namespace sodia
