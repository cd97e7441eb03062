#include "twistcube/job.hpp"

#include <algorithm>

#include "twistcube/character.hpp"
#include "twistcube/toric.hpp"

namespace twistcube::cli {

using nlohmann::json;

namespace {

constexpr std::string_view command_names[] = {"check", "cartier", "lattice", "character", "demazure",
                                              "necessary"};

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
    throw ConfigError("field '" + field + "': " + why);
}

Int get_int(const json& v, const std::string& field) {
    if (!v.is_number_integer()) invalid(field, "expected an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
        invalid(field, "integer out of 64-bit range");
    }
    return v.get<Int>();
}

std::uint64_t get_positive(const json& v, const std::string& field) {
    const Int x = get_int(v, field);
    if (x < 1) invalid(field, "expected a positive integer");
    return static_cast<std::uint64_t>(x);
}

std::vector<Int> get_int_list(const json& v, const std::string& field) {
    if (!v.is_array()) invalid(field, "expected a list of integers");
    std::vector<Int> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_int(v[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

void apply_options(const json& opts, JobConfig& cfg) {
    if (!opts.is_object()) invalid("options", "expected an object");
    for (const auto& [key, v] : opts.items()) {
        const std::string field = "options." + key;
        if (key == "point_cap") {
            cfg.limits.point_cap = get_positive(v, field);
        } else if (key == "cone_cap") {
            const auto cap = get_positive(v, field);
            if (cap > 62) invalid(field, "cone cap must be at most 62");
            cfg.limits.cone_cap = static_cast<unsigned>(cap);
        } else if (key == "grid_denom") {
            cfg.limits.grid_denominator = get_positive(v, field);
            cfg.grid_requested = true;
        } else if (key == "grid_point_cap") {
            cfg.limits.grid_point_cap = get_positive(v, field);
        } else if (key == "out") {
            if (!v.is_string()) invalid(field, "expected a path string");
            cfg.out_path = v.get<std::string>();
        } else {
            invalid(field, "unknown option");
        }
    }
}

CubeSpec parse_raw(const json& doc) {
    if (!doc.contains("n")) invalid("n", "required in raw mode");
    const Int n = get_int(doc["n"], "n");
    if (n < 0) invalid("n", "must be non-negative");
    if (!doc.contains("ell")) invalid("ell", "required in raw mode");
    auto ell = get_int_list(doc["ell"], "ell");
    if (ell.size() != static_cast<std::size_t>(n)) {
        invalid("ell", "has " + std::to_string(ell.size()) + " entries, expected n = " + std::to_string(n));
    }
    CubeSpec spec(static_cast<std::size_t>(n), std::move(ell));
    if (doc.contains("c")) {
        const json& c = doc["c"];
        if (!c.is_array()) invalid("c", "expected a list of [i, j, value]");
        std::vector<std::vector<bool>> seen(spec.n() + 1, std::vector<bool>(spec.n() + 1, false));
        for (std::size_t t = 0; t < c.size(); ++t) {
            const std::string field = "c[" + std::to_string(t) + "]";
            const auto triple = get_int_list(c[t], field);
            if (triple.size() != 3) invalid(field, "expected [i, j, value]");
            const Int i = triple[0], j = triple[1];
            if (i >= j) invalid(field, "requires i < j (c is strictly upper triangular)");
            if (i < 1 || j > n) invalid(field, "indices must satisfy 1 <= i < j <= n");
            if (seen[i][j]) invalid(field, "duplicate entry for c_" + std::to_string(i) + "," + std::to_string(j));
            seen[i][j] = true;
            spec.set_c(static_cast<std::size_t>(i), static_cast<std::size_t>(j), triple[2]);
        }
    }
    return spec;
}

void parse_rep(const json& doc, JobConfig& cfg) {
    if (!doc.contains("cartan")) invalid("cartan", "required in rep mode");
    const json& c = doc["cartan"];
    try {
        if (c.is_string()) {
            cfg.cartan = CartanMatrix::of_type(c.get<std::string>());
        } else if (c.is_array()) {
            std::vector<std::vector<Int>> rows;
            for (std::size_t i = 0; i < c.size(); ++i) rows.push_back(get_int_list(c[i], "cartan[" + std::to_string(i) + "]"));
            cfg.cartan = CartanMatrix(std::move(rows));
        } else {
            invalid("cartan", "expected a type label or a matrix");
        }
    } catch (const UsageError& e) {
        invalid("cartan", e.what());
    }
    cfg.cartan_echo = c;

    if (!doc.contains("lambda")) invalid("lambda", "required in rep mode");
    cfg.lambda = get_int_list(doc["lambda"], "lambda");
    if (cfg.lambda.size() != cfg.cartan->rank()) {
        invalid("lambda", "has " + std::to_string(cfg.lambda.size()) + " entries, rank is " +
                              std::to_string(cfg.cartan->rank()));
    }
    if (!doc.contains("word")) invalid("word", "required in rep mode");
    const auto letters = get_int_list(doc["word"], "word");
    for (std::size_t t = 0; t < letters.size(); ++t) {
        if (letters[t] < 1 || static_cast<std::size_t>(letters[t]) > cfg.cartan->rank()) {
            invalid("word[" + std::to_string(t) + "]", "simple root index outside 1.." + std::to_string(cfg.cartan->rank()));
        }
        cfg.word.push_back(static_cast<std::size_t>(letters[t]));
    }
    cfg.spec = derive_constants(*cfg.cartan, cfg.lambda, cfg.word);
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

json point_json(std::span<const Int> v) { return json(std::vector<Int>(v.begin(), v.end())); }

json spec_json(const CubeSpec& spec) {
    json c = json::array();
    json rows = json::array();
    for (std::size_t i = 1; i <= spec.n(); ++i) {
        json row = json::array();
        for (std::size_t j = i + 1; j <= spec.n(); ++j) {
            c.push_back({i, j, spec.c(i, j)});
            row.push_back(spec.c(i, j));
        }
        if (i < spec.n()) rows.push_back(std::move(row));
    }
    return {{"n", spec.n()}, {"c", std::move(c)}, {"c_rows", std::move(rows)}, {"ell", spec.ell()}};
}

json witness_json(const std::optional<Witness>& w) {
    if (!w) return nullptr;
    json j = {{"condition", w->tag}, {"vector", point_json(w->vector)}, {"detail", w->detail}};
    if (w->sigma) j["sigma"] = w->sigma->tuple_str();
    if (w->k) j["k"] = w->k;
    return j;
}

json character_json(const FormalCharacter& f) {
    // std::map keys are already in lexicographic weight order
    json out = json::array();
    for (const auto& [mu, m] : f.terms()) out.push_back({{"weight", mu}, {"multiplicity", m}});
    return out;
}

json run_check(const JobConfig& cfg) {
    const auto r = is_untwisted(cfg.spec, cfg.limits);
    json conditions = {{"a_closed", r.closed()},
                       {"b", r.b().holds},
                       {"c", r.c().holds},
                       {"d", r.d().holds},
                       {"e", r.e().holds},
                       {"basepoint_free", r.basepoint_free().holds}};
    json witnesses = json::object();
    for (const auto* cr : {&r.b(), &r.c(), &r.d(), &r.e(), &r.basepoint_free()}) {
        if (cr->witness) witnesses[cr->witness->tag] = witness_json(cr->witness);
    }
    json out = {{"verdict", r.verdict()},
                {"conditions", std::move(conditions)},
                {"ell_nonneg", r.ell_nonneg()},
                {"witness", witness_json(r.witness())},
                {"witnesses", std::move(witnesses)}};
    if (cfg.grid_requested) {
        const auto g = grid_convexity_oracle(cfg.spec, cfg.limits.grid_denominator, cfg.limits);
        json gj = {{"denominator", cfg.limits.grid_denominator},
                   {"convex_on_grid", g.convex_on_grid},
                   {"grid_points_scanned", g.grid_points}};
        if (!g.convex_on_grid) {
            auto rat = [](const RationalPoint& p) {
                json a = json::array();
                for (const auto& x : p) a.push_back({x.num(), x.den()});
                return a;
            };
            gj["violation"] = {{"p", rat(g.p)}, {"q", rat(g.q)}, {"midpoint", rat(g.midpoint)}};
        }
        out["grid_convexity"] = std::move(gj);
    }
    return out;
}

json run_cartier(const JobConfig& cfg) {
    json cones = json::array();
    for (const auto& cp : all_cartier_points(cfg.spec, cfg.limits.toric())) {
        cones.push_back({{"sigma", cp.sigma.tuple_str()},
                         {"m", point_json(cp.m)},
                         {"in_pd", pd_contains(cfg.spec, std::span<const Int>(cp.m))},
                         {"in_c", member(cfg.spec, std::span<const Int>(cp.m))}});
    }
    return {{"cones", std::move(cones)}};
}

json run_lattice(const JobConfig& cfg) {
    json points = json::array();
    Int negative = 0;
    for (const auto& p : enumerate_lattice(cfg.spec, cfg.limits.enumeration())) {
        if (p.sign < 0) ++negative;
        points.push_back({{"x", p.x}, {"sign", p.sign}});
    }
    const auto count = points.size();
    return {{"count", count}, {"negative", negative}, {"points", std::move(points)}};
}

void require_rep(const JobConfig& cfg) {
    if (cfg.mode != Mode::rep) {
        throw ConfigError("command '" + std::string(to_string(cfg.command)) + "' needs a rep-mode job (cartan, lambda, word)");
    }
}

} // namespace

std::string_view to_string(Command c) noexcept { return command_names[static_cast<int>(c)]; }

Command parse_command(std::string_view s) {
    for (std::size_t i = 0; i < std::size(command_names); ++i) {
        if (command_names[i] == s) return static_cast<Command>(i);
    }
    throw ConfigError("unknown command '" + std::string(s) + "'");
}

JobConfig parse_config(std::string_view text, std::optional<Command> command_override) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ConfigError("parse error at line " + std::to_string(line) + ", column " +
                          std::to_string(col) + ": " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");

    JobConfig cfg;
    const bool has_raw = doc.contains("n") || doc.contains("c") || doc.contains("ell");
    const bool has_rep = doc.contains("cartan") || doc.contains("lambda") || doc.contains("word");
    if (doc.contains("mode")) {
        if (!doc["mode"].is_string()) invalid("mode", "expected \"raw\" or \"rep\"");
        const auto m = doc["mode"].get<std::string>();
        if (m == "raw") cfg.mode = Mode::raw;
        else if (m == "rep") cfg.mode = Mode::rep;
        else invalid("mode", "expected \"raw\" or \"rep\"");
    } else if (has_rep && !has_raw) {
        cfg.mode = Mode::rep;
    }
    if (has_raw && has_rep) throw ConfigError("config has both raw (n, c, ell) and rep (cartan, lambda, word) payloads");
    if (cfg.mode == Mode::raw && has_rep) invalid("mode", "raw mode with a rep payload");
    if (cfg.mode == Mode::rep && has_raw) invalid("mode", "rep mode with a raw payload");

    for (const auto& [key, v] : doc.items()) {
        static constexpr std::string_view known[] = {"mode", "n", "c", "ell", "cartan", "lambda", "word", "command", "options"};
        if (std::find(std::begin(known), std::end(known), key) == std::end(known)) invalid(key, "unknown field");
    }

    std::optional<Command> from_doc;
    if (doc.contains("command")) {
        if (!doc["command"].is_string()) invalid("command", "expected a string");
        try {
            from_doc = parse_command(doc["command"].get<std::string>());
        } catch (const ConfigError& e) {
            invalid("command", e.what());
        }
    }
    if (command_override && from_doc && *command_override != *from_doc) {
        invalid("command", "document says '" + std::string(to_string(*from_doc)) + "' but '" +
                               std::string(to_string(*command_override)) + "' was requested");
    }
    if (!command_override && !from_doc) invalid("command", "no command given");
    cfg.command = command_override ? *command_override : *from_doc;

    if (doc.contains("options")) apply_options(doc["options"], cfg);

    if (cfg.mode == Mode::raw) {
        cfg.spec = parse_raw(doc);
    } else {
        parse_rep(doc, cfg);
    }
    return cfg;
}

json run(const JobConfig& cfg) {
    json report = {{"version", version},
                   {"command", to_string(cfg.command)},
                   {"mode", cfg.mode == Mode::raw ? "raw" : "rep"},
                   {"spec", spec_json(cfg.spec)}};
    if (cfg.mode == Mode::rep) {
        report["rep"] = {{"cartan", cfg.cartan_echo}, {"lambda", cfg.lambda}, {"word", cfg.word}};
    }

    json result;
    switch (cfg.command) {
    case Command::check: result = run_check(cfg); break;
    case Command::cartier: result = run_cartier(cfg); break;
    case Command::lattice: result = run_lattice(cfg); break;
    case Command::character: {
        require_rep(cfg);
        const auto cmp = compare_characters(cfg.spec, *cfg.cartan, cfg.lambda, cfg.word, cfg.limits.enumeration());
        result = {{"signed", character_json(cmp.signed_side)},
                  {"demazure", character_json(cmp.demazure_side)},
                  {"equal", cmp.equal},
                  {"diff", character_json(cmp.diff)}};
        break;
    }
    case Command::demazure: {
        require_rep(cfg);
        const auto d = demazure_character(*cfg.cartan, cfg.lambda, cfg.word);
        result = {{"demazure", character_json(d)}, {"total", d.total()}};
        break;
    }
    case Command::necessary: {
        require_rep(cfg);
        const auto nc = necessary_conditions(*cfg.cartan, cfg.lambda, cfg.word);
        result = {{"cond1", nc.cond1},
                  {"cond2", nc.cond2},
                  {"cond1_violators", nc.cond1_violators},
                  {"cond2_violators", nc.cond2_violators}};
        break;
    }
    }
    report["result"] = std::move(result);
    return report;
}

std::string render(const json& report) { return report.dump(2) + "\n"; }

int exit_code_for(const std::exception& e) noexcept {
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const UsageError*>(&e)) return 2;
    if (dynamic_cast<const CapacityError*>(&e)) return 3;
    if (dynamic_cast<const OverflowError*>(&e)) return 4;
    if (dynamic_cast<const InternalInconsistency*>(&e)) return 5;
    return 1;
}

} // namespace twistcube::cli
