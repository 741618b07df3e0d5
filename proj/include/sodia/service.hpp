#pragma once

#include "sodia/store.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace httplib {
class Server;
}

namespace sodia {

struct ApiError {
    int status = 500;
    std::string code;   // VALIDATION, NOT_FOUND, CONFLICT, UNPROCESSABLE, INTERNAL
    std::string detail;
    std::optional<std::vector<Violation>> violations;
};

/// HTTP front end over a CaseStore. Every mutating request must name the
/// expected revision, either as an If-Match header or a top-level "revision"
/// body field; the new revision comes back in the ETag header.
class ApiService {
public:
    using Clock = std::function<Timestamp()>;

    explicit ApiService(CaseStore& store, Clock clock = now_utc);

    /// Registers all /api routes on `server`.
    void mount(httplib::Server& server);

private:
    CaseStore& store_;
    Clock clock_;
};

struct ListenAddress {
    std::string host = "127.0.0.1";
    int port = 8080;
};

/// Parses "host:port", ":port" or "port". Throws OutOfDomain.
ListenAddress parse_listen_address(std::string_view text);

/// Blocks serving the API until the process is stopped.
int run_server(const ListenAddress& addr, const std::filesystem::path& data_dir);

} // namespace sodia
