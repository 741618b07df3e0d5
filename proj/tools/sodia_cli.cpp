// sodia: command-line front end for case files (*.sodia.json).
//
// Exit codes: 0 ok, 1 validation failure, 2 I/O error, 3 bad arguments.

#include "sodia/casefile.hpp"
#include "sodia/json_io.hpp"
#include "sodia/metrics.hpp"
#include "sodia/netmap_layout.hpp"
#include "sodia/service.hpp"
#include "sodia/svg.hpp"
#include "sodia/timebar_layout.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace sodia;

namespace {

enum ExitCode : int { kOk = 0, kValidation = 1, kIo = 2, kBadArgs = 3 };

struct BadArguments : Error {
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out || !(out << bytes) || !out.flush()) throw IoError("cannot write " + tmp);
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot replace " + path + ": " + ec.message());
}

void print(const Json& j) { std::cout << canonical(j); }

const NetMapVersion& pick_version(const CaseFile& c, const std::string& vid) {
    if (vid.empty()) {
        if (c.versions.empty()) throw BadArguments("case has no network-map versions");
        return c.versions.back();
    }
    const NetMapVersion* v = c.find_version(vid);
    if (!v) throw BadArguments("unknown version '" + vid + "'");
    return *v;
}

std::string case_id_from_path(const std::string& path) {
    std::string name = fs::path(path).filename().string();
    const std::string ext{kCaseFileExtension};
    if (name.size() > ext.size() && name.ends_with(ext)) name.resize(name.size() - ext.size());
    else name = fs::path(name).stem().string();
    for (char& ch : name)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_') ch = '_';
    if (name.size() > 64) name.resize(64);
    return is_valid_case_id(name) ? name : "case";
}

struct RenderFlags {
    std::string output;
    RenderSpec spec;
};

void add_render_flags(CLI::App* cmd, RenderFlags& f) {
    cmd->add_option("-o,--output", f.output, "Output SVG file (stdout if omitted)");
    cmd->add_option("--plot-radius", f.spec.plot_radius, "Network-map plot radius")->capture_default_str();
    cmd->add_option("--mark-radius", f.spec.mark_radius, "Contact mark radius")->capture_default_str();
    cmd->add_option("--width", f.spec.timebar_width, "Time-bar width")->capture_default_str();
    cmd->add_option("--lane-height", f.spec.lane_height, "Time-bar lane height")->capture_default_str();
    cmd->add_option("--gutter", f.spec.gutter, "Lane label gutter")->capture_default_str();
}

void emit_svg(const RenderFlags& f, const std::string& svg) {
    if (f.output.empty() || f.output == "-") std::cout << svg;
    else write_file(f.output, svg);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Social-diagnostics case files: network maps and biography time bars"};
    app.require_subcommand(1);

    std::string file;

    auto* cmd_new = app.add_subcommand("new", "Create a new case file");
    std::string name, gender, birth, case_id;
    bool force = false;
    cmd_new->add_option("file", file, "Case file to create")->required();
    cmd_new->add_option("--name", name, "Client display name")->required();
    cmd_new->add_option("--gender", gender, "Client gender (free text)");
    cmd_new->add_option("--birth-date", birth, "Client birth date (YYYY-MM-DD)");
    cmd_new->add_option("--case-id", case_id, "Case id (default: derived from the file name)");
    cmd_new->add_flag("--force", force, "Overwrite an existing file");

    auto* cmd_validate = app.add_subcommand("validate", "Check a case file; exit 0 iff it is valid");
    cmd_validate->add_option("file", file)->required();

    auto* cmd_metrics = app.add_subcommand("metrics", "Key metrics of a network-map version");
    std::string version;
    cmd_metrics->add_option("file", file)->required();
    cmd_metrics->add_option("--version", version, "Version id (default: latest)");

    auto* cmd_version = app.add_subcommand("new-version", "Append a network-map version");
    std::string from, label;
    cmd_version->add_option("file", file)->required();
    cmd_version->add_option("--from", from, "Version to copy (default: blank)");
    cmd_version->add_option("--label", label, "Version label");

    auto* cmd_layout = app.add_subcommand("layout", "Declutter suggestion for a network-map version");
    LayoutParams params;
    bool apply = false;
    cmd_layout->add_option("file", file)->required();
    cmd_layout->add_option("--version", version, "Version id")->required();
    cmd_layout->add_option("--mark-radius", params.mark_radius, "Mark radius (unit disc)")->capture_default_str();
    cmd_layout->add_option("--tolerance", params.radius_tolerance, "Max radial nudge")->capture_default_str();
    cmd_layout->add_flag("--apply", apply, "Write the suggested positions back (revision + 1)");

    auto* cmd_diff = app.add_subcommand("diff", "Differences between two network-map versions");
    std::string to;
    cmd_diff->add_option("file", file)->required();
    cmd_diff->add_option("--from", from, "Base version")->required();
    cmd_diff->add_option("--to", to, "Target version")->required();

    auto* cmd_render = app.add_subcommand("render", "Export SVG");
    cmd_render->add_option("file", file)->required();
    cmd_render->require_subcommand(1);
    RenderFlags net_flags, bar_flags;
    auto* cmd_render_net = cmd_render->add_subcommand("netmap", "Render a network-map version");
    cmd_render_net->add_option("--version", version, "Version id")->required();
    add_render_flags(cmd_render_net, net_flags);
    auto* cmd_render_bar = cmd_render->add_subcommand("timebar", "Render the time bar");
    add_render_flags(cmd_render_bar, bar_flags);

    auto* cmd_serve = app.add_subcommand("serve", "Run the HTTP API");
    std::string listen = "127.0.0.1:8080";
    std::string data_dir = "./sodia-data";
    cmd_serve->add_option("--listen", listen, "host:port")->capture_default_str();
    cmd_serve->add_option("--data", data_dir, "Data directory")->envname("SODIA_DATA_DIR")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kBadArgs;
    }

    try {
        if (*cmd_new) {
            if (!force && fs::exists(file)) throw BadArguments(file + " exists; pass --force to overwrite");
            CaseFile c;
            c.case_id = case_id.empty() ? case_id_from_path(file) : case_id;
            c.client.display_name = name;
            if (!gender.empty()) c.client.gender = gender;
            if (!birth.empty()) {
                c.client.birth_date = parse_date(birth);
                if (!c.client.birth_date) throw BadArguments("--birth-date must be YYYY-MM-DD");
            }
            write_file(file, save(c));
            return kOk;
        }

        if (*cmd_validate) {
            try {
                load(read_file(file));
            } catch (const InvalidDocument& e) {
                print(Json(e.violations()));
                return kValidation;
            }
            print(Json::array());
            return kOk;
        }

        if (*cmd_serve) {
            const auto addr = parse_listen_address(listen);
            std::cerr << "serving on http://" << addr.host << ":" << addr.port << " (data: " << data_dir << ")\n";
            return run_server(addr, data_dir);
        }

        const CaseFile c = load(read_file(file));

        if (*cmd_metrics) {
            print(Json(compute_metrics(pick_version(c, version))));
        } else if (*cmd_version) {
            const std::optional<std::string> src = from.empty() ? std::nullopt : std::optional{from};
            if (src && !c.find_version(*src)) throw BadArguments("unknown version '" + *src + "'");
            const CaseFile next = new_version(c, src, label, now_utc());
            write_file(file, save(next));
            print(Json(next.versions.back().version_id));
        } else if (*cmd_layout) {
            const auto& v = pick_version(c, version);
            try {
                require_valid(params);
            } catch (const OutOfDomain& e) {
                throw BadArguments(e.what());
            }
            const LayoutSuggestion s = suggest_layout(v, params);
            if (apply) write_file(file, save(replace_version(c, v.version_id, apply_suggestion(v, s))));
            print(Json(s));
        } else if (*cmd_diff) {
            print(Json(diff_versions(pick_version(c, from), pick_version(c, to))));
        } else if (*cmd_render_net) {
            emit_svg(net_flags, render_netmap(pick_version(c, version), net_flags.spec));
        } else if (*cmd_render_bar) {
            if (!c.timebar) throw BadArguments("case has no time bar");
            emit_svg(bar_flags, render_timebar(*c.timebar, layout_all(*c.timebar), bar_flags.spec));
        }
        return kOk;
    } catch (const BadArguments& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadArgs;
    } catch (const OutOfDomain& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadArgs;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        for (const auto& v : e.violations()) std::cerr << "  " << v.entity << ": " << v.rule << " " << v.detail << "\n";
        return kValidation;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    }
}
