#include "cli_app.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tailbounds/bounds.hpp"
#include "tailbounds/decompose.hpp"
#include "tailbounds/errors.hpp"
#include "tailbounds/extremal.hpp"
#include "tailbounds/pmf.hpp"
#include "tailbounds/serialize.hpp"

namespace tailbounds::cli {

namespace {

using nlohmann::json;

/// Flags shared by every subcommand, filled in by CLI11.
struct RunConfig {
    std::string pmf_literal;
    std::string input_path;
    std::string a_text;
    std::string mu_text;
    std::string var_text;
    std::string mode = "one-sided";
    std::string format;  // empty: the subcommand's default
    std::string kind;
    std::string epsilon_text = "0.001";
    std::string a_range;
    std::string mu_list;
    std::int64_t n = 50;
    bool use_float = false;
    bool continuous = false;
    bool alternate = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

NumberStyle style_of(const RunConfig& cfg) {
    return cfg.use_float ? NumberStyle::Float : NumberStyle::Exact;
}

std::string cell(const Rational& v, NumberStyle style) {
    return style == NumberStyle::Exact ? to_string(v) : format_double(to_double(v));
}

std::string cell(const BoundValue& v, NumberStyle style) {
    if (const auto* q = std::get_if<Rational>(&v))
        return cell(*q, style);
    return format_double(std::get<double>(v));
}

// Plain output never shows a probability above 1; clamped values get '*'.
std::string plain_cell(const BoundValue& v, NumberStyle style, bool& clamped) {
    if (to_double(v) > 1.0) {
        if (const auto* q = std::get_if<Rational>(&v); q == nullptr || *q > 1) {
            clamped = true;
            return "1*";
        }
    }
    return cell(v, style);
}

std::optional<Pmf> load_pmf(const RunConfig& cfg) {
    if (!cfg.pmf_literal.empty() && !cfg.input_path.empty())
        throw UsageError("give either --pmf or --input, not both");
    if (!cfg.pmf_literal.empty())
        return parse_pmf_literal(cfg.pmf_literal);
    if (!cfg.input_path.empty()) {
        std::ifstream in(cfg.input_path);
        if (!in)
            throw UsageError("cannot open " + cfg.input_path);
        json j;
        try {
            in >> j;
        } catch (const json::parse_error& e) {
            throw ValidationError(std::string("malformed pmf JSON: ") + e.what());
        }
        return pmf_from_json(j);
    }
    return std::nullopt;
}

Pmf require_pmf(const RunConfig& cfg) {
    auto p = load_pmf(cfg);
    if (!p)
        throw UsageError("a pmf is required (--pmf or --input)");
    return std::move(*p);
}

std::int64_t parse_int(std::string_view text, std::string_view flag) {
    const Rational q = parse_rational(text);
    if (!is_integer(q))
        throw UsageError(std::string(flag) + " must be an integer, got " + std::string(text));
    return boost::multiprecision::numerator(q).convert_to<std::int64_t>();
}

std::pair<std::int64_t, std::int64_t> parse_range(std::string_view text) {
    const auto dots = text.find("..");
    if (dots == std::string_view::npos) {
        const auto v = parse_int(text, "--a");
        return {v, v};
    }
    return {parse_int(text.substr(0, dots), "--a"), parse_int(text.substr(dots + 2), "--a")};
}

std::vector<Rational> parse_list(std::string_view text) {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto end = comma == std::string_view::npos ? text.size() : comma;
        out.push_back(parse_rational(text.substr(start, end - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

TailMode parse_mode(const std::string& mode) {
    return mode == "two-sided" ? TailMode::TwoSided : TailMode::OneSidedUpper;
}

void emit_bounds(const RunConfig& cfg, json report, const std::vector<BoundResult>& bounds,
                 std::ostream& out) {
    const auto style = style_of(cfg);
    if (cfg.format == "json") {
        json list = json::array();
        for (const auto& b : bounds)
            list.push_back(to_json(b, style));
        report["bounds"] = std::move(list);
        out << report.dump(2) << '\n';
    } else if (cfg.format == "csv") {
        out << "formula,value\n";
        if (report.contains("exact_tail"))
            out << "ExactTail," << (report["exact_tail"].is_string() ? report["exact_tail"].get<std::string>()
                                                                     : report["exact_tail"].dump())
                << '\n';
        for (const auto& b : bounds)
            out << formula_name(b.formula) << ',' << cell(b.value, style) << '\n';
    } else {
        bool clamped = false;
        if (report.contains("exact_tail"))
            out << "exact tail: "
                << (report["exact_tail"].is_string() ? report["exact_tail"].get<std::string>()
                                                     : report["exact_tail"].dump())
                << '\n';
        for (const auto& b : bounds)
            out << formula_name(b.formula) << ": " << plain_cell(b.value, style, clamped) << '\n';
        if (clamped)
            out << "* raw bound exceeds 1; shown clamped\n";
    }
}

int cmd_bound(const RunConfig& cfg, std::ostream& out) {
    const auto style = style_of(cfg);
    const TailMode mode = parse_mode(cfg.mode);
    auto pmf = load_pmf(cfg);
    json report;
    report["mode"] = cfg.mode;

    if (pmf) {
        if (!cfg.mu_text.empty() || !cfg.var_text.empty())
            throw UsageError("--mu/--var cannot be combined with a pmf input");
        const auto a = parse_int(cfg.a_text, "--a");
        const ShapeReport s = shape(*pmf);
        report["a"] = a;
        report["pmf"] = to_json(*pmf, style);
        report["mean"] = render(mean(*pmf), style);
        report["variance"] = render(variance(*pmf), style);
        report["shape"] = {{"decreasing", s.is_decreasing},
                           {"unimodal", s.is_unimodal},
                           {"mode", s.mode ? json(*s.mode) : json(nullptr)}};
        report["exact_tail"] =
            render(mode == TailMode::OneSidedUpper ? tail(*pmf, a) : two_sided_tail(*pmf, Rational(a)), style);
        emit_bounds(cfg, std::move(report), best_bound(*pmf, a, mode), out);
        return kOk;
    }

    const std::string& moment_text = mode == TailMode::OneSidedUpper ? cfg.mu_text : cfg.var_text;
    if (moment_text.empty())
        throw UsageError(mode == TailMode::OneSidedUpper ? "one-sided bounds need a pmf or --mu"
                                                         : "two-sided bounds need a pmf or --var");
    const Rational moment = parse_rational(moment_text);
    const Rational a = parse_rational(cfg.a_text);
    report["a"] = render(a, style);
    std::vector<BoundResult> bounds;
    if (cfg.continuous) {
        const double m = to_double(moment);
        const double ad = to_double(a);
        if (mode == TailMode::OneSidedUpper) {
            bounds.push_back(markov_continuous_decreasing(m, ad));
            bounds.push_back({Formula::MarkovClassical, m / ad, {}, {"nonnegative support"}});
        } else {
            bounds.push_back(chebyshev_continuous_unimodal(m, ad));
            bounds.push_back({Formula::ChebyshevClassical, m / (ad * ad), {}, {}});
        }
    } else {
        if (mode == TailMode::OneSidedUpper) {
            if (is_integer(a) && a >= 1) {
                auto r = markov_decreasing(moment, boost::multiprecision::numerator(a).convert_to<std::int64_t>());
                r.asserted = {"support starts at 0", "decreasing pmf"};
                bounds.push_back(std::move(r));
            }
            auto r = markov_classical(moment, a);
            r.asserted = {"nonnegative support"};
            bounds.push_back(std::move(r));
        } else {
            if (is_integer(a) && a >= 1) {
                auto r =
                    chebyshev_unimodal(moment, boost::multiprecision::numerator(a).convert_to<std::int64_t>());
                r.asserted = {"integer support", "unimodal pmf"};
                bounds.push_back(std::move(r));
            }
            bounds.push_back(chebyshev_classical(moment, a));
        }
    }
    std::stable_sort(bounds.begin(), bounds.end(),
                     [](const BoundResult& x, const BoundResult& y) { return to_double(x.value) < to_double(y.value); });
    emit_bounds(cfg, std::move(report), bounds, out);
    return kOk;
}

int cmd_decompose(const RunConfig& cfg, std::ostream& out) {
    const auto style = style_of(cfg);
    const Pmf p = require_pmf(cfg);
    std::string kind = cfg.kind.empty() ? "auto" : cfg.kind;
    if (kind == "auto")
        kind = shape(p).is_decreasing ? "uniform" : "interval";
    json report;
    if (kind == "uniform") {
        report = to_json(to_uniform_mixture(p), style);
    } else if (kind == "interval") {
        report = to_json(unimodal_to_interval_mixture(p), style);
    } else {
        throw UsageError("--kind must be auto, uniform or interval");
    }
    report["kind"] = kind;
    out << report.dump(2) << '\n';
    return kOk;
}

int cmd_extremal(const RunConfig& cfg, std::ostream& out) {
    const auto style = style_of(cfg);
    if (cfg.mu_text.empty())
        throw UsageError("extremal needs --mu");
    const std::string kind = cfg.kind.empty() ? "discrete" : cfg.kind;
    json report;
    if (kind == "discrete") {
        const auto a = parse_int(cfg.a_text, "--a");
        report = to_json(extremal_markov_discrete(a, parse_rational(cfg.mu_text),
                                                  cfg.alternate ? ExtremalTop::Lower : ExtremalTop::Upper),
                         style);
    } else if (kind == "continuous") {
        report = to_json(extremal_markov_continuous(to_double(parse_rational(cfg.a_text)),
                                                    to_double(parse_rational(cfg.mu_text)),
                                                    to_double(parse_rational(cfg.epsilon_text))));
    } else {
        throw UsageError("--kind must be discrete or continuous");
    }
    out << report.dump(2) << '\n';
    return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const auto style = style_of(cfg);
    const auto [first, last] = parse_range(cfg.a_range.empty() ? cfg.a_text : cfg.a_range);
    const auto rows = verify_tightness_theorem2(first, last, parse_list(cfg.mu_list.empty() ? cfg.mu_text : cfg.mu_list),
                                                cfg.n);
    if (cfg.format == "json") {
        json list = json::array();
        for (const auto& row : rows)
            list.push_back(to_json(row, style));
        out << json{{"N", cfg.n}, {"rows", std::move(list)}}.dump(2) << '\n';
    } else {
        out << tightness_csv(rows, style);
    }
    return kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    const auto style = style_of(cfg);
    const Pmf p = require_pmf(cfg);
    const TailMode mode = parse_mode(cfg.mode);
    std::int64_t first = 1;
    std::int64_t last = std::max<std::int64_t>(1, mode == TailMode::OneSidedUpper
                                                      ? p.max_support()
                                                      : p.max_support() - p.offset());
    const std::string range = cfg.a_range.empty() ? cfg.a_text : cfg.a_range;
    if (!range.empty())
        std::tie(first, last) = parse_range(range);
    if (first < 1 || last < first)
        throw DomainError("sweep needs a range 1 <= first <= last");

    json rows = json::array();
    std::ostringstream csv;
    csv << "a,exact_tail,best_formula,best_bound,ratio\n";
    for (std::int64_t a = first; a <= last; ++a) {
        const Rational exact = mode == TailMode::OneSidedUpper ? tail(p, a) : two_sided_tail(p, Rational(a));
        const auto bounds = best_bound(p, a, mode);
        if (bounds.empty())
            throw ShapeError("no bound applies to this pmf in the requested mode");
        const Rational best = std::get<Rational>(bounds.front().value);
        std::optional<Rational> ratio;
        if (exact != 0)
            ratio = best / exact;
        rows.push_back({{"a", a},
                        {"exact_tail", render(exact, style)},
                        {"best_formula", formula_name(bounds.front().formula)},
                        {"best_bound", render(best, style)},
                        {"ratio", ratio ? render(*ratio, style) : json(nullptr)}});
        csv << a << ',' << cell(exact, style) << ',' << formula_name(bounds.front().formula) << ','
            << cell(best, style) << ',' << (ratio ? cell(*ratio, style) : std::string()) << '\n';
    }
    if (cfg.format == "json")
        out << json{{"mode", cfg.mode}, {"rows", std::move(rows)}}.dump(2) << '\n';
    else
        out << csv.str();
    return kOk;
}

void add_pmf_options(CLI::App* sub, RunConfig& cfg) {
    auto* literal = sub->add_option("--pmf", cfg.pmf_literal, "uniform:l..r | point:k | weights:o;w0,w1,...");
    auto* file = sub->add_option("--input", cfg.input_path, "pmf JSON file")->check(CLI::ExistingFile);
    literal->excludes(file);
}

void add_output_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "plain"}));
    sub->add_flag("--float", cfg.use_float, "render rationals as decimals");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Classical and shape-sharpened Markov/Chebyshev tail bounds", "tailbound"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* bound = app.add_subcommand("bound", "tail bounds for a pmf or for moment summaries");
    add_pmf_options(bound, cfg);
    bound->add_option("--a", cfg.a_text, "threshold")->required();
    bound->add_option("--mode", cfg.mode)->check(CLI::IsMember({"one-sided", "two-sided"}));
    bound->add_option("--mu", cfg.mu_text, "mean, when no pmf is given");
    bound->add_option("--var", cfg.var_text, "variance, when no pmf is given");
    bound->add_flag("--continuous", cfg.continuous, "use the continuous-density formulas");

    auto* decompose = app.add_subcommand("decompose", "mixture decomposition of a pmf");
    add_pmf_options(decompose, cfg);
    decompose->add_option("--kind", cfg.kind)->check(CLI::IsMember({"auto", "uniform", "interval"}));

    auto* extremal = app.add_subcommand("extremal", "worst-case distribution for the decreasing Markov bound");
    extremal->add_option("--kind", cfg.kind)->check(CLI::IsMember({"discrete", "continuous"}));
    extremal->add_option("--a", cfg.a_text)->required();
    extremal->add_option("--mu", cfg.mu_text)->required();
    extremal->add_option("--epsilon", cfg.epsilon_text, "continuous construction only");
    extremal->add_flag("--alternate", cfg.alternate, "use uniform{0..2a-2} instead of uniform{0..2a-1}");

    auto* verify = app.add_subcommand("verify", "LP oracle vs mu/(2a-1) over a grid");
    verify->add_option("--a", cfg.a_range, "range lo..hi")->required();
    verify->add_option("--mu", cfg.mu_list, "comma-separated means")->required();
    verify->add_option("--N", cfg.n, "support is {0..N}");

    auto* sweep = app.add_subcommand("sweep", "best bound vs exact tail across a range of a");
    add_pmf_options(sweep, cfg);
    sweep->add_option("--a", cfg.a_range, "range lo..hi");
    sweep->add_option("--mode", cfg.mode)->check(CLI::IsMember({"one-sided", "two-sided"}));

    for (auto* sub : {bound, decompose, extremal, verify, sweep})
        add_output_options(sub, cfg);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    if (cfg.format.empty())
        cfg.format = verify->parsed() || sweep->parsed() ? "csv" : "json";

    try {
        if (bound->parsed())
            return cmd_bound(cfg, out);
        if (decompose->parsed())
            return cmd_decompose(cfg, out);
        if (extremal->parsed())
            return cmd_extremal(cfg, out);
        if (verify->parsed())
            return cmd_verify(cfg, out);
        return cmd_sweep(cfg, out);
    } catch (...) {
        return report_error(std::current_exception(), err);
    }
}

int report_error(std::exception_ptr error, std::ostream& err) {
    try {
        std::rethrow_exception(error);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const ValidationError& e) {
        err << "invalid input: " << e.what() << '\n';
        return kValidation;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << '\n';
        return kInfeasible;
    } catch (const SoundnessViolation& e) {
        err << "soundness violation: " << e.what() << '\n';
        return kSoundness;
    }
}

} // namespace tailbounds::cli
