#include "dampwave/config.hpp"

#include "dampwave/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <utility>

namespace dampwave {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string fmt(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

template <class Int>
Int parse_int(std::string_view text)
{
    Int value{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw ConfigError("expected an integer, got '" + std::string(text) + "'");
    return value;
}

bool parse_bool(std::string_view text)
{
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError("expected true or false, got '" + std::string(text) + "'");
}

std::vector<double> parse_list(std::string_view text)
{
    std::vector<double> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto item = trim(text.substr(0, comma));
        if (item.empty()) throw ConfigError("empty entry in list");
        out.push_back(parse_real(item));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

std::string fmt_list(const std::vector<double>& xs)
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += fmt(xs[i]);
    }
    return out;
}

Profile& profile_of(ExperimentConfig& c, int which) { return which == 0 ? c.data.u0 : c.data.u1; }
const Profile& profile_of(const ExperimentConfig& c, int which) { return which == 0 ? c.data.u0 : c.data.u1; }

std::string profile_name(const Profile& p)
{
    if (std::holds_alternative<CompactBump>(p)) return "bump";
    if (std::holds_alternative<PolyDecay>(p)) return "poly";
    return "zero";
}

struct Field {
    std::string section;
    std::string key;
    std::function<void(ExperimentConfig&, std::string_view)> set;
    std::function<std::string(const ExperimentConfig&)> get;
    std::function<bool(const ExperimentConfig&)> present = [](const ExperimentConfig&) { return true; };
};

template <class T>
Field real_field(std::string section, std::string key, T ExperimentConfig::*outer, double T::*inner)
{
    return {std::move(section), std::move(key),
            [=](ExperimentConfig& c, std::string_view v) { (c.*outer).*inner = parse_real(v); },
            [=](const ExperimentConfig& c) { return fmt((c.*outer).*inner); }};
}

void add_profile_fields(std::vector<Field>& fields, int which)
{
    const std::string tag = which == 0 ? "u0_" : "u1_";
    fields.push_back({"run", tag + "profile",
                      [=](ExperimentConfig& c, std::string_view v) {
                          if (v == "zero") profile_of(c, which) = ZeroProfile{};
                          else if (v == "bump") profile_of(c, which) = CompactBump{};
                          else if (v == "poly") profile_of(c, which) = PolyDecay{};
                          else throw ConfigError("profile must be zero, bump or poly");
                      },
                      [=](const ExperimentConfig& c) { return profile_name(profile_of(c, which)); }});
    auto bump_field = [&](const std::string& key, double CompactBump::*m) {
        fields.push_back({"run", tag + key,
                          [=](ExperimentConfig& c, std::string_view v) {
                              auto* b = std::get_if<CompactBump>(&profile_of(c, which));
                              if (!b) throw ConfigError(tag + key + " needs " + tag + "profile = bump");
                              b->*m = parse_real(v);
                          },
                          [=](const ExperimentConfig& c) {
                              return fmt(std::get<CompactBump>(profile_of(c, which)).*m);
                          },
                          [=](const ExperimentConfig& c) {
                              return std::holds_alternative<CompactBump>(profile_of(c, which));
                          }});
    };
    bump_field("center", &CompactBump::center);
    bump_field("width", &CompactBump::width);
    fields.push_back({"run", tag + "q",
                      [=](ExperimentConfig& c, std::string_view v) {
                          auto* d = std::get_if<PolyDecay>(&profile_of(c, which));
                          if (!d) throw ConfigError(tag + "q needs " + tag + "profile = poly");
                          d->q = parse_real(v);
                      },
                      [=](const ExperimentConfig& c) { return fmt(std::get<PolyDecay>(profile_of(c, which)).q); },
                      [=](const ExperimentConfig& c) {
                          return std::holds_alternative<PolyDecay>(profile_of(c, which));
                      }});
    fields.push_back({"run", tag + "amplitude",
                      [=](ExperimentConfig& c, std::string_view v) {
                          auto& p = profile_of(c, which);
                          if (auto* b = std::get_if<CompactBump>(&p)) b->amplitude = parse_real(v);
                          else if (auto* d = std::get_if<PolyDecay>(&p)) d->amplitude = parse_real(v);
                          else throw ConfigError(tag + "amplitude needs a nonzero " + tag + "profile");
                      },
                      [=](const ExperimentConfig& c) {
                          const auto& p = profile_of(c, which);
                          if (auto* b = std::get_if<CompactBump>(&p)) return fmt(b->amplitude);
                          return fmt(std::get<PolyDecay>(p).amplitude);
                      },
                      [=](const ExperimentConfig& c) {
                          return !std::holds_alternative<ZeroProfile>(profile_of(c, which));
                      }});
}

const std::vector<Field>& fields()
{
    static const std::vector<Field> table = [] {
        using C = ExperimentConfig;
        std::vector<Field> f;
        f.push_back({"model", "n", [](C& c, std::string_view v) { c.model.n = parse_int<int>(v); },
                     [](const C& c) { return std::to_string(c.model.n); }});
        f.push_back(real_field("model", "alpha", &C::model, &ModelParams::alpha));
        f.push_back(real_field("model", "a0", &C::model, &ModelParams::a0));
        f.push_back(real_field("model", "a1", &C::model, &ModelParams::a1));
        f.push_back(real_field("model", "p", &C::model, &ModelParams::p));
        f.push_back(real_field("model", "lambda", &C::model, &ModelParams::lambda));
        f.push_back({"model", "domain",
                     [](C& c, std::string_view v) {
                         if (v == "whole") c.model.domain.kind = DomainKind::WholeSpace;
                         else if (v == "exterior") c.model.domain.kind = DomainKind::ExteriorBall;
                         else throw ConfigError("domain must be whole or exterior");
                     },
                     [](const C& c) { return std::string(c.model.domain.is_exterior() ? "exterior" : "whole"); }});
        f.push_back({"model", "r0", [](C& c, std::string_view v) { c.model.domain.r0 = parse_real(v); },
                     [](const C& c) { return fmt(c.model.domain.r0); },
                     [](const C& c) { return c.model.domain.is_exterior(); }});
        f.push_back({"model", "damping",
                     [](C& c, std::string_view v) {
                         if (v == "power") c.model.damping = DampingProfile::PowerLaw;
                         else if (v == "constant") c.model.damping = DampingProfile::Constant;
                         else throw ConfigError("damping must be power or constant");
                     },
                     [](const C& c) {
                         return std::string(c.model.damping == DampingProfile::Constant ? "constant" : "power");
                     }});
        f.push_back({"model", "case",
                     [](C& c, std::string_view v) {
                         if (v == "I") c.decay_case = DecayCase::I;
                         else if (v == "II") c.decay_case = DecayCase::II;
                         else throw ConfigError("case must be I or II");
                     },
                     [](const C& c) { return std::string(c.decay_case == DecayCase::I ? "I" : "II"); }});

        f.push_back({"grid", "r_max", [](C& c, std::string_view v) { c.r_max = parse_real(v); },
                     [](const C& c) { return fmt(c.r_max); }});
        f.push_back({"grid", "nodes", [](C& c, std::string_view v) { c.nodes = parse_int<std::size_t>(v); },
                     [](const C& c) { return std::to_string(c.nodes); }});

        f.push_back(real_field("run", "T_final", &C::run, &RunConfig::T_final));
        f.push_back(real_field("run", "cfl", &C::run, &RunConfig::cfl));
        f.push_back({"run", "record_every", [](C& c, std::string_view v) { c.run.record_every = parse_int<int>(v); },
                     [](const C& c) { return std::to_string(c.run.record_every); }});
        f.push_back(real_field("run", "cone_margin", &C::run, &RunConfig::cone_margin));
        f.push_back({"run", "require_cone", [](C& c, std::string_view v) { c.run.require_cone = parse_bool(v); },
                     [](const C& c) { return std::string(c.run.require_cone ? "true" : "false"); }});
        add_profile_fields(f, 0);
        add_profile_fields(f, 1);

        f.push_back(real_field("weights", "epsilon", &C::weights, &WeightKnobs::epsilon));
        f.push_back(real_field("weights", "delta", &C::weights, &WeightKnobs::delta));
        f.push_back(real_field("weights", "t0", &C::weights, &WeightKnobs::t0));
        f.push_back({"weights", "nu",
                     [](C& c, std::string_view v) { c.weights.nu = (v == "auto") ? 0.0 : parse_real(v); },
                     [](const C& c) { return c.weights.nu > 0.0 ? fmt(c.weights.nu) : std::string("auto"); }});
        f.push_back({"weights", "family",
                     [](C& c, std::string_view v) {
                         if (v == "auto") c.family = FamilyChoice::Auto;
                         else if (v == "psi") c.family = FamilyChoice::Psi;
                         else if (v == "theta") c.family = FamilyChoice::Theta;
                         else throw ConfigError("family must be auto, psi or theta");
                     },
                     [](const C& c) { return to_string(c.family); }});
        f.push_back({"weights", "seed", [](C& c, std::string_view v) { c.seed = parse_int<std::uint64_t>(v); },
                     [](const C& c) { return std::to_string(c.seed); }});

        auto path = [&](const char* key, std::string OutputPaths::*m) {
            f.push_back({"output", key, [=](C& c, std::string_view v) { c.output.*m = std::string(v); },
                         [=](const C& c) { return c.output.*m; }});
        };
        path("dir", &OutputPaths::dir);
        path("energies", &OutputPaths::energies);
        path("fit_report", &OutputPaths::fit_report);
        path("prediction", &OutputPaths::prediction);
        path("summary", &OutputPaths::summary);

        f.push_back({"sweep", "p", [](C& c, std::string_view v) { c.sweep.p = parse_list(v); },
                     [](const C& c) { return fmt_list(c.sweep.p); },
                     [](const C& c) { return !c.sweep.p.empty(); }});
        f.push_back({"sweep", "lambda", [](C& c, std::string_view v) { c.sweep.lambda = parse_list(v); },
                     [](const C& c) { return fmt_list(c.sweep.lambda); },
                     [](const C& c) { return !c.sweep.lambda.empty(); }});
        f.push_back(real_field("sweep", "budget_seconds", &C::sweep, &SweepAxes::budget_seconds));
        return f;
    }();
    return table;
}

} // namespace

double parse_real(std::string_view text)
{
    text = trim(text);
    auto number = [&](std::string_view s) {
        s = trim(s);
        double value = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
        if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size())
            throw ConfigError("expected a number, got '" + std::string(text) + "'");
        return value;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return number(text);
    const double den = number(text.substr(slash + 1));
    if (den == 0.0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
    return number(text.substr(0, slash)) / den;
}

std::string to_string(FamilyChoice family)
{
    switch (family) {
    case FamilyChoice::Auto: return "auto";
    case FamilyChoice::Psi: return "psi";
    case FamilyChoice::Theta: return "theta";
    }
    return "?";
}

std::vector<std::string> ExperimentConfig::violations() const
{
    std::vector<std::string> out = model.violations();
    auto need = [&](bool ok, const std::string& what) {
        if (!ok) out.push_back(what);
    };
    const double r_in = model.domain.is_exterior() ? model.domain.r0 : 0.0;
    need(r_max > r_in, "grid: r_max must exceed the inner radius");
    need(nodes >= 16, "grid: nodes >= 16");
    need(run.T_final > 0.0, "run: T_final > 0");
    need(run.cfl > 0.0 && run.cfl <= 0.9, "run: 0 < cfl <= 0.9");
    need(run.record_every >= 1, "run: record_every >= 1");
    need(run.cone_margin >= 0.0, "run: cone_margin >= 0");
    for (int which = 0; which < 2; ++which) {
        const auto& prof = which == 0 ? data.u0 : data.u1;
        const std::string tag = which == 0 ? "u0" : "u1";
        if (const auto* b = std::get_if<CompactBump>(&prof)) {
            need(b->width > 0.0, "run: " + tag + "_width > 0");
            need(b->center >= 0.0, "run: " + tag + "_center >= 0");
        } else if (const auto* d = std::get_if<PolyDecay>(&prof)) {
            if (model.violations().empty())
                need(poly_decay_admissible(d->q, which == 0 ? DataRole::Displacement : DataRole::Velocity, model),
                     "run: " + tag + "_q too small for I0 to be finite");
        }
    }
    if (run.require_cone && run.T_final > 0.0)
        need(r_max >= data.support_radius() + run.T_final + run.cone_margin,
             "run: require_cone needs r_max >= support radius + T_final + cone_margin");
    need(weights.epsilon > 0.0 && weights.epsilon < 0.5, "weights: 0 < epsilon < 1/2");
    need(weights.delta > 0.0 && weights.delta < 0.5, "weights: 0 < delta < 1/2");
    need(weights.t0 > 0.0, "weights: t0 > 0");
    need(weights.nu >= 0.0, "weights: nu >= 0 (0 or auto selects the default)");
    need(!output.dir.empty(), "output: dir must be non-empty");
    if (decay_case == DecayCase::I && model.alpha < 2.0)
        need(model.lambda < (model.n - model.alpha) / (2.0 - model.alpha),
             "model: case I needs lambda < (n-alpha)/(2-alpha)");
    need(sweep.p.empty() == sweep.lambda.empty(), "sweep: p and lambda axes must both be given");
    need(sweep.budget_seconds > 0.0, "sweep: budget_seconds > 0");
    const auto base = model.violations();
    for (double p : sweep.p) {
        ModelParams cell = model;
        cell.p = p;
        for (const auto& v : cell.violations())
            if (std::find(base.begin(), base.end(), v) == base.end())
                out.push_back("sweep p = " + fmt(p) + ": " + v);
    }
    for (double lam : sweep.lambda) need(lam >= 0.0, "sweep: lambda = " + fmt(lam) + " must be >= 0");
    return out;
}

ExperimentConfig parse_config(std::string_view text)
{
    struct Entry {
        std::string value;
        int line;
    };
    std::map<std::pair<std::string, std::string>, Entry> entries;
    std::string section;
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = (nl == std::string_view::npos) ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            bool known = false;
            for (const auto& f : fields()) known = known || f.section == section;
            if (!known) throw ParseError(line_no, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, "expected key = value");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (section.empty()) throw ParseError(line_no, "key '" + key + "' outside any section");
        if (key.empty()) throw ParseError(line_no, "empty key");
        bool known = false;
        for (const auto& f : fields()) known = known || (f.section == section && f.key == key);
        if (!known) throw ParseError(line_no, "unknown key '" + key + "' in [" + section + "]");
        const auto [it, fresh] = entries.emplace(std::pair{section, key}, Entry{value, line_no});
        if (!fresh) {
            std::ostringstream msg;
            msg << "duplicate key '" << key << "' in [" << section << "] (first set on line "
                << it->second.line << ")";
            throw ParseError(line_no, msg.str());
        }
    }

    ExperimentConfig config;
    if (!entries.count({"model", "domain"}) && entries.count({"model", "r0"}))
        throw ParseError(entries.at({"model", "r0"}).line, "r0 needs domain = exterior");
    for (const auto& f : fields()) {
        const auto it = entries.find({f.section, f.key});
        if (it == entries.end()) continue;
        try {
            f.set(config, it->second.value);
        } catch (const ConfigError& e) {
            throw ParseError(it->second.line, e.what());
        }
        if (f.key == "r0" && !config.model.domain.is_exterior())
            throw ParseError(it->second.line, "r0 needs domain = exterior");
    }
    const auto bad = config.violations();
    if (!bad.empty()) throw ValidationError(bad);
    return config;
}

std::string serialize(const ExperimentConfig& config)
{
    std::string out;
    std::string section;
    for (const auto& f : fields()) {
        if (!f.present(config)) continue;
        if (f.section != section) {
            if (!section.empty()) out += '\n';
            section = f.section;
            out += "[" + section + "]\n";
        }
        out += f.key + " = " + f.get(config) + "\n";
    }
    return out;
}

} // namespace dampwave
