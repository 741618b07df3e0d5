#include "sodia/service.hpp"

#include "sodia/json_io.hpp"
#include "sodia/svg.hpp"

#include <httplib.h>

#include <charconv>
#include <random>

namespace sodia {

namespace {

using httplib::Request;
using httplib::Response;

void send_json(Response& res, int status, const Json& body) {
    res.status = status;
    res.set_content(canonical(body), "application/json");
}

void send_error(Response& res, const ApiError& e) {
    Json body{{"status", e.status}, {"code", e.code}, {"detail", e.detail}};
    body["violations"] = e.violations ? Json(*e.violations) : Json(nullptr);
    send_json(res, e.status, body);
}

void send_case(Response& res, int status, const CaseFile& c) {
    res.status = status;
    res.set_header("ETag", "\"" + std::to_string(c.revision) + "\"");
    res.set_content(save(c), "application/json");
}

template <typename Fn>
httplib::Server::Handler guarded(Fn fn) {
    return [fn = std::move(fn)](const Request& req, Response& res) {
        try {
            fn(req, res);
        } catch (const ValidationError& e) {
            send_error(res, {400, "VALIDATION", e.what(), e.violations()});
        } catch (const MalformedDocument& e) {
            send_error(res, {400, "VALIDATION", e.what(), std::nullopt});
        } catch (const UnsupportedSchema& e) {
            send_error(res, {400, "VALIDATION", e.what(), std::nullopt});
        } catch (const OutOfDomain& e) {
            send_error(res, {400, "VALIDATION", e.what(), std::nullopt});
        } catch (const InvalidReference& e) {
            send_error(res, {404, "NOT_FOUND", e.what(), std::nullopt});
        } catch (const Conflict& e) {
            res.set_header("ETag", "\"" + std::to_string(e.current_revision()) + "\"");
            send_error(res, {409, "CONFLICT", e.what(), std::nullopt});
        } catch (const Unprocessable& e) {
            send_error(res, {422, "UNPROCESSABLE", e.what(), std::nullopt});
        } catch (const nlohmann::json::exception& e) {
            send_error(res, {400, "VALIDATION", e.what(), std::nullopt});
        } catch (const std::exception& e) {
            send_error(res, {500, "INTERNAL", e.what(), std::nullopt});
        }
    };
}

Json body_of(const Request& req) {
    if (req.body.empty()) return Json::object();
    Json j = parse_json(req.body);
    if (!j.is_object()) throw MalformedDocument("request body must be a JSON object");
    return j;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

/// If-Match wins over a "revision" body field.
std::int64_t expected_revision(const Request& req, const Json& body) {
    if (req.has_header("If-Match")) {
        std::string_view tag = req.get_header_value("If-Match");
        if (tag.starts_with("W/")) tag.remove_prefix(2);
        if (tag.size() >= 2 && tag.front() == '"' && tag.back() == '"') tag = tag.substr(1, tag.size() - 2);
        if (auto v = parse_int(tag)) return *v;
        throw ValidationError({{"request", "BAD_REVISION", "If-Match must carry an integer revision"}});
    }
    if (auto it = body.find("revision"); it != body.end()) {
        if (it->is_number_integer()) return it->get<std::int64_t>();
        throw ValidationError({{"request", "BAD_REVISION", "'revision' must be an integer"}});
    }
    throw ValidationError({{"request", "MISSING_REVISION", "mutations need If-Match or a 'revision' field"}});
}

std::string random_case_id() {
    static thread_local std::mt19937_64 rng{std::random_device{}()};
    static constexpr char hex[] = "0123456789abcdef";
    std::string id = "case-";
    for (int i = 0; i < 12; ++i) id += hex[rng() % 16];
    return id;
}

std::string param(const Request& req, std::size_t i) { return req.matches[static_cast<int>(i)].str(); }

const NetMapVersion& version_of(const CaseFile& c, const std::string& vid) {
    const NetMapVersion* v = c.find_version(vid);
    if (!v) throw InvalidReference("unknown network-map version '" + vid + "'");
    return *v;
}

const TimeBar& timebar_of(const CaseFile& c) {
    if (!c.timebar) throw InvalidReference("case has no time bar");
    return *c.timebar;
}

Json summary_json(const CaseSummary& s) {
    return Json{{"case_id", s.case_id},
                {"display_name", s.display_name},
                {"revision", s.revision},
                {"version_count", s.version_count}};
}

} // namespace

ApiService::ApiService(CaseStore& store, Clock clock) : store_(store), clock_(std::move(clock)) {}

void ApiService::mount(httplib::Server& server) {
    const std::string cases = "/api/cases";
    const std::string one = cases + "/([^/]+)";
    const std::string version = one + "/netmap/versions/([^/]+)";
    const std::string timebar = one + "/timebar";

    // Runs a revision-checked mutation and answers with the updated case.
    auto mutate = [this](const Request& req, Response& res, const Json& body, int status,
                         const CaseStore::Mutation& fn) {
        const auto updated = store_.update(param(req, 1), expected_revision(req, body), fn);
        send_case(res, status, *updated);
    };

    // --- cases ---

    server.Post(cases, guarded([this](const Request& req, Response& res) {
        const Json body = body_of(req);
        CaseFile c;
        c.case_id = body.contains("case_id") ? body.at("case_id").get<std::string>() : random_case_id();
        c.client = client_from_json(body.contains("client") ? body.at("client") : body);
        if (body.contains("sector_config")) c.sector_config = sector_config_from_json(body.at("sector_config"));
        send_case(res, 201, *store_.create(std::move(c)));
    }));

    server.Get(cases, guarded([this](const Request&, Response& res) {
        Json out = Json::array();
        for (const auto& s : store_.list()) out.push_back(summary_json(s));
        send_json(res, 200, out);
    }));

    server.Get(one, guarded([this](const Request& req, Response& res) {
        send_case(res, 200, *store_.get(param(req, 1)));
    }));

    server.Delete(one, guarded([this](const Request& req, Response& res) {
        store_.remove(param(req, 1), expected_revision(req, body_of(req)));
        res.status = 204;
    }));

    // --- network-map versions ---

    server.Post(one + "/netmap/versions", guarded([this, mutate](const Request& req, Response& res) {
        const Json body = body_of(req);
        std::optional<std::string> from;
        if (body.contains("from") && !body.at("from").is_null()) from = body.at("from").get<std::string>();
        const std::string label = body.value("label", std::string{});
        const Timestamp now = clock_();
        mutate(req, res, body, 201, [&](const CaseFile& c) { return new_version(c, from, label, now); });
    }));

    server.Get(version, guarded([this](const Request& req, Response& res) {
        send_json(res, 200, Json(version_of(*store_.get(param(req, 1)), param(req, 2))));
    }));

    server.Put(version, guarded([mutate](const Request& req, Response& res) {
        const Json body = body_of(req);
        NetMapVersion v = version_from_json(body);
        const std::string vid = param(req, 2);
        mutate(req, res, body, 200, [&](const CaseFile& c) { return replace_version(c, vid, v); });
    }));

    server.Get(one + "/netmap/diff", guarded([this](const Request& req, Response& res) {
        const auto c = store_.get(param(req, 1));
        const auto& a = version_of(*c, req.get_param_value("from"));
        const auto& b = version_of(*c, req.get_param_value("to"));
        send_json(res, 200, Json(diff_versions(a, b)));
    }));

    // --- contacts and edges ---

    server.Post(version + "/contacts", guarded([mutate](const Request& req, Response& res) {
        Json body = body_of(req);
        const std::string vid = param(req, 2);
        mutate(req, res, body, 201, [&](const CaseFile& c) {
            Json j = body;
            if (!j.contains("contact_id") || j.at("contact_id").is_null()) {
                const auto& v = version_of(c, vid);
                j["contact_id"] = fresh_id("c", [&](const std::string& id) { return v.find_contact(id) != nullptr; });
            }
            if (!j.contains("is_human")) j["is_human"] = true;
            return add_contact(c, vid, contact_from_json(j));
        });
    }));

    server.Put(version + "/contacts/([^/]+)", guarded([mutate](const Request& req, Response& res) {
        Json body = body_of(req);
        body["contact_id"] = param(req, 3);
        if (!body.contains("is_human")) body["is_human"] = true;
        const Contact contact = contact_from_json(body);
        const std::string vid = param(req, 2);
        mutate(req, res, body, 200, [&](const CaseFile& c) { return update_contact(c, vid, contact); });
    }));

    server.Delete(version + "/contacts/([^/]+)", guarded([mutate](const Request& req, Response& res) {
        const std::string vid = param(req, 2);
        const std::string cid = param(req, 3);
        mutate(req, res, body_of(req), 200, [&](const CaseFile& c) { return remove_contact(c, vid, cid); });
    }));

    server.Post(version + "/edges", guarded([mutate](const Request& req, Response& res) {
        const Json body = body_of(req);
        const Edge e = edge_from_json(body);
        const std::string vid = param(req, 2);
        mutate(req, res, body, 201, [&](const CaseFile& c) { return add_edge(c, vid, e); });
    }));

    server.Delete(version + "/edges/([^/]+)/([^/]+)", guarded([mutate](const Request& req, Response& res) {
        const std::string vid = param(req, 2);
        const Edge e{param(req, 3), param(req, 4)};
        mutate(req, res, body_of(req), 200, [&](const CaseFile& c) { return remove_edge(c, vid, e); });
    }));

    // --- metrics and layout ---

    server.Get(version + "/metrics", guarded([this](const Request& req, Response& res) {
        send_json(res, 200, Json(compute_metrics(version_of(*store_.get(param(req, 1)), param(req, 2)))));
    }));

    server.Get(version + "/collisions", guarded([this](const Request& req, Response& res) {
        LayoutParams p;
        if (req.has_param("mark_radius")) p.mark_radius = std::stod(req.get_param_value("mark_radius"));
        Json out = Json::array();
        for (const auto& [a, b] : collisions(version_of(*store_.get(param(req, 1)), param(req, 2)), p))
            out.push_back(Json::array({a, b}));
        send_json(res, 200, out);
    }));

    server.Post(version + "/layout:suggest", guarded([this](const Request& req, Response& res) {
        const LayoutParams p = layout_params_from_json(body_of(req));
        send_json(res, 200, Json(suggest_layout(version_of(*store_.get(param(req, 1)), param(req, 2)), p)));
    }));

    // --- time bar ---

    server.Get(timebar, guarded([this](const Request& req, Response& res) {
        send_json(res, 200, Json(timebar_of(*store_.get(param(req, 1)))));
    }));

    server.Put(timebar, guarded([mutate](const Request& req, Response& res) {
        const Json body = body_of(req);
        TimeBar t;
        if (body.contains("lanes")) {
            t = timebar_from_json(body);
        } else {
            // Initialization shortcut: birth date and optional end, standard lanes only.
            const auto birth = parse_date(body.value("birth_date", std::string{}));
            if (!birth) throw MalformedDocument("'birth_date' must be a YYYY-MM-DD date");
            Date end = today_utc();
            if (body.contains("domain_end")) {
                auto d = parse_date(body.at("domain_end").get<std::string>());
                if (!d) throw MalformedDocument("'domain_end' must be a YYYY-MM-DD date");
                end = *d;
            }
            t = make_timebar(*birth, end);
        }
        mutate(req, res, body, 200, [&](const CaseFile& c) {
            if (c.client.birth_date && *c.client.birth_date != t.birth_date)
                throw Unprocessable("time bar birth date differs from the client's birth date");
            return set_timebar(c, t);
        });
    }));

    auto post_event = [mutate](const Request& req, Response& res, std::optional<std::string> id) {
        Json body = body_of(req);
        mutate(req, res, body, 201, [&](const CaseFile& c) {
            Json j = body;
            if (id) j["event_id"] = *id;
            if (!j.contains("event_id") || j.at("event_id").is_null()) {
                const auto& t = timebar_of(c);
                j["event_id"] = fresh_id("e", [&](const std::string& x) { return t.find_event(x) != nullptr; });
            }
            return add_event(c, event_from_json(j));
        });
    };

    server.Post(timebar + "/events", guarded([post_event](const Request& req, Response& res) {
        post_event(req, res, std::nullopt);
    }));

    server.Post(timebar + "/events/([^/]+)", guarded([post_event](const Request& req, Response& res) {
        post_event(req, res, param(req, 2));
    }));

    server.Put(timebar + "/events/([^/]+)", guarded([mutate](const Request& req, Response& res) {
        Json body = body_of(req);
        body["event_id"] = param(req, 2);
        const LifeEvent e = event_from_json(body);
        mutate(req, res, body, 200, [&](const CaseFile& c) { return update_event(c, e); });
    }));

    server.Delete(timebar + "/events/([^/]+)", guarded([mutate](const Request& req, Response& res) {
        const std::string eid = param(req, 2);
        mutate(req, res, body_of(req), 200, [&](const CaseFile& c) { return remove_event(c, eid); });
    }));

    server.Post(timebar + "/lanes", guarded([mutate](const Request& req, Response& res) {
        const Json body = body_of(req);
        const std::string label = body.value("label", std::string{});
        mutate(req, res, body, 201, [&](const CaseFile& c) {
            const auto& t = timebar_of(c);
            std::string id = body.contains("lane_id") ? body.at("lane_id").get<std::string>()
                                                      : fresh_id("lane", [&](const std::string& x) {
                                                            return t.find_lane(x) != nullptr;
                                                        });
            return add_lane(c, std::move(id), label);
        });
    }));

    server.Put(timebar + "/lanes/([^/]+)", guarded([mutate](const Request& req, Response& res) {
        const Json body = body_of(req);
        const std::string lid = param(req, 2);
        const std::string label = body.value("label", std::string{});
        mutate(req, res, body, 200, [&](const CaseFile& c) { return rename_lane(c, lid, label); });
    }));

    server.Delete(timebar + "/lanes/([^/]+)", guarded([mutate](const Request& req, Response& res) {
        const std::string lid = param(req, 2);
        mutate(req, res, body_of(req), 200, [&](const CaseFile& c) { return remove_lane(c, lid); });
    }));

    server.Get(timebar + "/layout", guarded([this](const Request& req, Response& res) {
        send_json(res, 200, Json(layout_all(timebar_of(*store_.get(param(req, 1))))));
    }));

    server.Get(timebar + "/ticks", guarded([this](const Request& req, Response& res) {
        send_json(res, 200, Json(axis_ticks(timebar_of(*store_.get(param(req, 1))))));
    }));

    // --- exports ---

    server.Get(one + "/export/netmap/([^/]+)\\.svg", guarded([this](const Request& req, Response& res) {
        const auto c = store_.get(param(req, 1));
        res.set_content(render_netmap(version_of(*c, param(req, 2)), RenderSpec{}), "image/svg+xml");
    }));

    server.Get(one + "/export/timebar\\.svg", guarded([this](const Request& req, Response& res) {
        const auto c = store_.get(param(req, 1));
        const auto& t = timebar_of(*c);
        res.set_content(render_timebar(t, layout_all(t), RenderSpec{}), "image/svg+xml");
    }));

    server.Get(one + "/export/case\\.sodia\\.json", guarded([this](const Request& req, Response& res) {
        send_case(res, 200, *store_.get(param(req, 1)));
    }));

    server.set_error_handler([](const Request&, Response& res) {
        if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
        send_error(res, {res.status, res.status == 404 ? "NOT_FOUND" : "BAD_REQUEST", "no such route", std::nullopt});
        return httplib::Server::HandlerResponse::Handled;
    });
}

ListenAddress parse_listen_address(std::string_view text) {
    ListenAddress out;
    std::string_view port = text;
    if (auto colon = text.rfind(':'); colon != std::string_view::npos) {
        if (colon > 0) out.host = std::string(text.substr(0, colon));
        port = text.substr(colon + 1);
    }
    auto p = parse_int(port);
    if (!p || *p < 0 || *p > 65535) throw OutOfDomain("listen address needs a port in 0..65535");
    out.port = static_cast<int>(*p);
    return out;
}

int run_server(const ListenAddress& addr, const std::filesystem::path& data_dir) {
    CaseStore store(data_dir);
    ApiService api(store);
    httplib::Server server;
    api.mount(server);
    if (!server.listen(addr.host, addr.port)) throw IoError("cannot listen on " + addr.host + ":" + std::to_string(addr.port));
    return 0;
}

} // namespace sodia
