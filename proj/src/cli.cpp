#include "aflux/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "aflux/dsl.hpp"
#include "aflux/errors.hpp"
#include "aflux/fixture.hpp"
#include "aflux/query.hpp"
#include "aflux/server.hpp"
#include "aflux/simulator.hpp"
#include "aflux/structure.hpp"

namespace aflux {

namespace {

std::string resolve_root(const std::string& from_flag) {
    if (!from_flag.empty()) return from_flag;
    if (const char* env = std::getenv("AFLUX_ROOT"); env && *env) return env;
    throw UsageError("no root URL given; pass --root or set AFLUX_ROOT");
}

nlohmann::ordered_json value_to_json(ValueKind kind, const TypedValue& v) {
    using json = nlohmann::ordered_json;
    switch (kind) {
        case ValueKind::ScalarNumber:
            return v.as_number();
        case ValueKind::NumberList:
            return json(v.as_number_list());
        case ValueKind::ScalarString:
            return v.as_text();
        case ValueKind::StringList:
            return json(v.as_text_list());
        case ValueKind::Matrix:
            return json(v.as_matrix());
        case ValueKind::Kpoints: {
            const Kpoints& k = v.as_kpoints();
            json obj = json::object();
            obj["relaxation_grid"] = k.relaxation_grid;
            if (k.static_grid)
                obj["static_grid"] = *k.static_grid;
            else
                obj["static_grid"] = nullptr;
            obj["band_path"] = k.band_path;
            obj["points_per_segment"] = k.points_per_segment;
            return obj;
        }
    }
    return nullptr;
}

std::string csv_cell(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            width[c] = std::max(width[c], row[c].size());

    auto line = [&](const std::vector<std::string>& cells) {
        std::string text;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c) text += "  ";
            text += cells[c];
            if (c + 1 < cells.size())
                text += std::string(width[c] - cells[c].size(), ' ');
        }
        while (!text.empty() && text.back() == ' ') text.pop_back();
        out << text << "\n";
    };
    line(header);
    for (const auto& row : rows) line(row);
}

void report(std::ostream& err, const Error& e) { err << "error: " << e.what() << "\n"; }

void report_with_caret(std::ostream& err, const ParseError& e, const std::string& text) {
    err << "error: " << e.what() << "\n";
    err << "  " << text << "\n";
    err << "  " << std::string(std::min(e.offset(), text.size()), ' ') << "^\n";
}

struct QueryArgs {
    std::string root;
    std::string filter_text;
    std::vector<std::string> selects;
    std::vector<std::string> excludes;
    std::string orderby;
    bool descending = false;
    int batch = 100;
    long long limit = -1;
    std::string format;
};

int run_query(const QueryArgs& args, std::ostream& out, std::ostream& err) {
    Query query{"http://unset"};
    try {
        query = Query(resolve_root(args.root), args.batch);
        if (!args.filter_text.empty()) {
            try {
                query = query.filter(parse_filter_dsl(args.filter_text));
            } catch (const ParseError& e) {
                report_with_caret(err, e, args.filter_text);
                return 1;
            }
        }
        if (!args.selects.empty()) query = query.select(args.selects);
        if (!args.excludes.empty()) query = query.exclude(args.excludes);
        if (!args.orderby.empty())
            query = query.orderby(args.orderby, args.descending);
        else if (args.descending)
            throw UsageError("--desc requires --orderby");
        query.plan();  // surfaces plan-construction problems as usage errors
    } catch (const Error& e) {
        report(err, e);
        return 1;
    }

    std::vector<std::string> columns{"auid", "compound"};
    for (const MatchbookEntry& entry : query.plan().matchbook) {
        if (entry.hidden) continue;
        if (entry.keyword == "auid" || entry.keyword == "aurl" || entry.keyword == "compound")
            continue;
        if (std::find(columns.begin(), columns.end(), entry.keyword) == columns.end())
            columns.push_back(entry.keyword);
    }

    try {
        ResultSet result = query.execute();
        std::size_t count = result.total();
        if (args.limit >= 0)
            count = std::min<std::size_t>(count, static_cast<std::size_t>(args.limit));

        if (args.format == "json") {
            for (std::size_t i = 0; i < count; ++i) {
                Entry entry = result.at(static_cast<long long>(i));
                nlohmann::ordered_json obj;
                obj["auid"] = entry.auid();
                obj["aurl"] = entry.aurl();
                for (const auto& column : columns) {
                    if (column == "auid") continue;
                    const std::string* raw = entry.raw_if_present(column);
                    if (!raw) continue;
                    if (column == "compound") {
                        obj["compound"] = *raw;
                        continue;
                    }
                    const Keyword& meta = query.registry()->lookup(column);
                    obj[column] = value_to_json(meta.kind, entry.value(column));
                }
                out << obj.dump() << "\n";
            }
        } else {
            std::vector<std::vector<std::string>> rows;
            rows.reserve(count);
            for (std::size_t i = 0; i < count; ++i) {
                Entry entry = result.at(static_cast<long long>(i));
                std::vector<std::string> row;
                row.reserve(columns.size());
                for (const auto& column : columns) {
                    const std::string* raw = entry.raw_if_present(column);
                    row.push_back(raw ? *raw : "");
                }
                rows.push_back(std::move(row));
            }
            if (args.format == "csv") {
                auto emit = [&](const std::vector<std::string>& cells) {
                    for (std::size_t c = 0; c < cells.size(); ++c) {
                        if (c) out << ",";
                        out << csv_cell(cells[c]);
                    }
                    out << "\n";
                };
                emit(columns);
                for (const auto& row : rows) emit(row);
            } else {
                print_table(out, columns, rows);
            }
        }
    } catch (const Error& e) {
        report(err, e);
        return 2;
    }
    return 0;
}

int run_keywords(const std::string& describe, std::ostream& out, std::ostream& err) {
    RegistryPtr registry = embedded_registry();
    if (describe.empty()) {
        out << render_catalog(*registry);
        return 0;
    }
    try {
        const Keyword& kw = registry->lookup(describe);
        out << "name: " << kw.name << "\n";
        out << "kind: " << to_string(kw.kind) << "\n";
        if (!kw.units.empty()) out << "units: " << kw.units << "\n";
        if (!kw.title.empty()) out << "title: " << kw.title << "\n";
        out << "status: "
            << (kw.status == KeywordStatus::Deprecated ? "deprecated" : "production") << "\n";
        if (!kw.description.empty()) out << "description: " << kw.description << "\n";
    } catch (const Error& e) {
        report(err, e);
        return 1;
    }
    return 0;
}

struct FetchArgs {
    std::string root;
    std::string auid;
    std::string export_format;
};

int run_fetch(const FetchArgs& args, std::ostream& out, std::ostream& err) {
    Query query{"http://unset"};
    try {
        query = Query(resolve_root(args.root))
                    .filter(compare("auid", CompareOp::EQ, Literal::text(args.auid)));
    } catch (const Error& e) {
        report(err, e);
        return 1;
    }

    try {
        ResultSet result = query.execute();
        if (result.total() == 0) {
            err << "error: no entry with auid '" << args.auid << "'\n";
            return 2;
        }
        Entry entry = result.at(0);
        if (!args.export_format.empty()) {
            out << export_structure(to_structure(entry), args.export_format);
            return 0;
        }
        nlohmann::ordered_json obj;
        obj["auid"] = entry.auid();
        obj["aurl"] = entry.aurl();
        if (const std::string* compound = entry.raw_if_present("compound"))
            obj["compound"] = *compound;
        for (const Keyword& kw : query.registry()->entries()) {
            if (kw.name == "auid" || kw.name == "aurl" || kw.name == "compound") continue;
            try {
                entry.raw(kw.name);
            } catch (const MissingPropertyError&) {
                continue;
            }
            obj[kw.name] = value_to_json(kw.kind, entry.value(kw.name));
        }
        out << obj.dump(2) << "\n";
    } catch (const Error& e) {
        report(err, e);
        return 2;
    }
    return 0;
}

struct ServeArgs {
    std::string dataset_path;
    int port = 8080;
};

int run_serve(const ServeArgs& args, std::ostream& out, std::ostream& err) {
    Dataset dataset = [&] {
        if (args.dataset_path.empty()) return fixture_dataset();
        std::ifstream in(args.dataset_path, std::ios::binary);
        if (!in) throw UsageError("cannot open dataset file '" + args.dataset_path + "'");
        std::ostringstream text;
        text << in.rdbuf();
        return load_dataset(text.str(), embedded_registry());
    }();

    try {
        SimulatorServer server(std::move(dataset), args.port);
        out << "serving " << server.simulator().dataset().records().size()
            << " records on " << server.root() << "\n";
        out.flush();
        for (;;) std::this_thread::sleep_for(std::chrono::hours(1));
    } catch (const Error& e) {
        report(err, e);
        return 2;
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            bool stdout_is_tty) {
    CLI::App app{"AFLUX materials-database query tool", "aflux"};
    app.require_subcommand(1);

    QueryArgs query_args;
    CLI::App* query_cmd = app.add_subcommand("query", "Search a database root");
    query_cmd->add_option("--root", query_args.root, "Database root URL (or AFLUX_ROOT)");
    query_cmd->add_option("--filter", query_args.filter_text,
                          "Filter expression, e.g. 'Egap > 6 & nspecies == 2'");
    query_cmd->add_option("--select", query_args.selects, "Keyword to request");
    query_cmd->add_option("--exclude", query_args.excludes, "Keyword to hide");
    query_cmd->add_option("--orderby", query_args.orderby, "Sort keyword");
    query_cmd->add_flag("--desc", query_args.descending, "Sort descending");
    query_cmd->add_option("--batch", query_args.batch, "Page size")
        ->check(CLI::PositiveNumber);
    query_cmd->add_option("--limit", query_args.limit, "Print at most N entries")
        ->check(CLI::NonNegativeNumber);
    query_cmd->add_option("--format", query_args.format, "Output format")
        ->check(CLI::IsMember({"table", "json", "csv"}));

    std::string describe;
    CLI::App* keywords_cmd = app.add_subcommand("keywords", "List the keyword schema");
    keywords_cmd->add_option("--describe", describe, "Show one keyword in detail");

    FetchArgs fetch_args;
    CLI::App* fetch_cmd = app.add_subcommand("fetch", "Fetch one entry by auid");
    fetch_cmd->add_option("--root", fetch_args.root, "Database root URL (or AFLUX_ROOT)");
    fetch_cmd->add_option("--auid", fetch_args.auid, "Entry identifier")->required();
    fetch_cmd->add_option("--export", fetch_args.export_format, "Write a structure file")
        ->check(CLI::IsMember({"xyz", "poscar"}));

    ServeArgs serve_args;
    CLI::App* serve_cmd = app.add_subcommand("serve", "Run the protocol simulator");
    serve_cmd->add_option("--dataset", serve_args.dataset_path,
                          "Dataset JSON file (defaults to the built-in fixture)");
    serve_cmd->add_option("--port", serve_args.port, "Listen port")
        ->check(CLI::Range(0, 65535));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::Success& e) {
        out << app.help();
        (void)e;
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (query_cmd->parsed()) {
            if (query_args.format.empty())
                query_args.format = stdout_is_tty ? "table" : "json";
            return run_query(query_args, out, err);
        }
        if (keywords_cmd->parsed()) return run_keywords(describe, out, err);
        if (fetch_cmd->parsed()) return run_fetch(fetch_args, out, err);
        if (serve_cmd->parsed()) return run_serve(serve_args, out, err);
    } catch (const Error& e) {
        report(err, e);
        return 1;
    }
    return 1;
}

}  // namespace aflux
