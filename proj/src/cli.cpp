#include "simerka/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>

#include "simerka/arith.hpp"
#include "simerka/composition.hpp"
#include "simerka/errors.hpp"
#include "simerka/factorizer.hpp"
#include "simerka/relations.hpp"
#include "simerka/serialize.hpp"

namespace simerka::cli {

namespace {

struct Options {
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> fb_bound;
    std::uint64_t scan_bound = 10;
    unsigned power_cap = 40;
    int workers = 1;
    bool json = false;
    std::string relations_log;
    std::uint64_t max_trials = 1000000;
    double time_limit = 600;

    std::string disc;
    std::vector<std::string> forms;
    std::string exponent;
    std::string multiple;
    std::string number;
    std::uint64_t limit = 10000;
    std::uint64_t prime_bound = 47;
    std::string fermat_k;
    std::uint64_t fermat_n = 0;
    std::string strategy = "RANDOM_PRODUCTS";
    std::size_t target = 0;
};

Discriminant parse_disc(const std::string& text)
{
    const Int d = parse_int(text);
    const Int r = floor_mod(d, 4);
    if (d >= 0 || (r != 0 && r != 1))
        throw Error(Errc::invalid_argument, "discriminant must be negative and 0 or 1 mod 4, got " + text);
    return make_discriminant(d);
}

QForm form_for(const std::string& text, const std::optional<Discriminant>& disc)
{
    QForm q = parse_form(text);
    validate(q);
    if (disc && discriminant_value(q) != disc->value)
        throw Error(Errc::discriminant_mismatch, "form " + to_string(q) + " has discriminant " +
                                                     discriminant_value(q).get_str() + ", not " + disc->value.get_str());
    return q;
}

Json factored_rows(const std::vector<SigmaCubeRow>& rows)
{
    Json out = Json::array();
    for (const auto& r : rows)
        out.push_back(Json{{"p", r.p.get_str()}, {"sigma", r.sigma.get_str()}, {"factorization", to_json(r.factorization)}});
    return out;
}

class Runner {
public:
    Runner(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

    int reduce_cmd()
    {
        const QForm q = form_for(single_form(), std::nullopt);
        const QForm r = reduce(q);
        if (o_.json)
            emit(Json{{"command", "reduce"}, {"input", to_json(q)}, {"reduced", to_json(r)}});
        else
            out_ << to_string(r) << '\n';
        return 0;
    }

    int compose_cmd()
    {
        if (o_.forms.size() < 2) throw Error(Errc::invalid_argument, "compose needs at least two --form arguments");
        std::vector<QForm> qs;
        for (const auto& f : o_.forms) qs.push_back(form_for(f, std::nullopt));
        QForm acc = qs[0];
        for (std::size_t i = 1; i < qs.size(); ++i) acc = compose(acc, qs[i]);
        acc = reduce(acc);
        if (o_.json) {
            Json forms = Json::array();
            for (const auto& q : qs) forms.push_back(to_json(q));
            emit(Json{{"command", "compose"}, {"forms", forms}, {"result", to_json(acc)}});
        } else {
            out_ << to_string(acc) << '\n';
        }
        return 0;
    }

    int pow_cmd()
    {
        const QForm q = form_for(single_form(), std::nullopt);
        const Int e = parse_int(o_.exponent);
        const QForm r = power(q, e);
        if (o_.json)
            emit(Json{{"command", "pow"}, {"form", to_json(q)}, {"exponent", e.get_str()}, {"result", to_json(r)}});
        else
            out_ << to_string(r) << '\n';
        return 0;
    }

    int order_cmd()
    {
        const Discriminant d = disc_or_from_form();
        const QForm q = form_for(single_form(), d);
        Int multiple;
        if (!o_.multiple.empty()) {
            multiple = parse_int(o_.multiple);
        } else {
            caveat();
            const auto& divisors = class_group(d).structure.divisors;
            multiple = divisors.empty() ? Int(1) : divisors.back();
        }
        const Int ord = element_order(q, multiple);
        if (o_.json)
            emit(Json{{"command", "order"}, {"discriminant", d.value.get_str()}, {"form", to_json(q)},
                      {"multiple", multiple.get_str()}, {"order", ord.get_str()}});
        else
            out_ << ord << '\n';
        return 0;
    }

    int class_cmd()
    {
        const Discriminant d = parse_disc(require(o_.disc, "--disc"));
        caveat();
        const ClassGroup& cg = class_group(d);
        if (o_.json) {
            Json j{{"command", "class"}, {"discriminant", d.value.get_str()}};
            const Json body = to_json(cg.structure);
            for (auto& [k, v] : body.items()) j[k] = v;
            j["factor_base_size"] = cg.base.size();
            j["relations"] = cg.relations.size();
            emit(j);
        } else {
            out_ << "h = " << cg.structure.order << '\n' << "structure:";
            if (cg.structure.divisors.empty()) out_ << " trivial";
            for (const auto& x : cg.structure.divisors) out_ << ' ' << x;
            out_ << '\n' << "certified: " << certification_name(cg.structure.certified) << '\n';
        }
        return 0;
    }

    int factor_cmd()
    {
        const Int n = parse_int(require(o_.number, "N"));
        FactorConfig fc;
        fc.fb_bound = o_.fb_bound;
        fc.seed = o_.seed;
        fc.effort.scan_bound = o_.scan_bound;
        fc.power_cap = o_.power_cap;
        fc.workers = o_.workers;
        fc.max_trials = o_.max_trials;
        fc.time_limit = std::chrono::duration<double>(o_.time_limit);
        caveat();
        const FactorResult r = factor(n, fc);
        if (o_.json) {
            Json j{{"command", "factor"}};
            const Json body = to_json(r);
            for (auto& [k, v] : body.items()) j[k] = v;
            emit(j);
        } else {
            out_ << r.n << " =";
            for (std::size_t i = 0; i < r.factors.size(); ++i) {
                const auto& f = r.factors[i];
                out_ << (i ? " * " : " ") << f.divisor;
                if (f.exponent > 1) out_ << '^' << f.exponent;
                if (f.certainty != Certainty::prime) out_ << " [" << certainty_name(f.certainty) << ']';
            }
            out_ << '\n';
            for (const auto& s : r.trace) {
                out_ << "  " << s.step << ": " << s.detail;
                if (s.form) out_ << " " << to_string(*s.form);
                out_ << '\n';
            }
        }
        return r.budget_exhausted ? 2 : 0;
    }

    int carmichael_cmd()
    {
        const auto values = carmichael_scan(o_.limit);
        if (o_.json) {
            emit(Json{{"command", "carmichael"}, {"limit", o_.limit}, {"values", values}});
        } else {
            for (auto v : values) out_ << v << '\n';
        }
        return 0;
    }

    int sigma_cmd()
    {
        const auto table = sigma_cube_table(o_.prime_bound);
        const auto solutions = sigma_cube_square_search(o_.prime_bound);
        if (o_.json) {
            Json sol = Json::array();
            for (const auto& s : solutions) sol.push_back(s.get_str());
            emit(Json{{"command", "sigma-demo"}, {"prime_bound", o_.prime_bound}, {"table", factored_rows(table)}, {"solutions", sol}});
        } else {
            for (const auto& r : table) out_ << "sigma(" << r.p << "^3) = " << r.sigma << " = " << r.factorization.to_string() << '\n';
            out_ << "solutions:";
            for (const auto& s : solutions) out_ << ' ' << s;
            out_ << '\n';
        }
        return 0;
    }

    int fermat_cmd()
    {
        const Int k = parse_int(require(o_.fermat_k, "--k"));
        const bool divides = fermat_number_divisible(k, o_.fermat_n);
        if (o_.json)
            emit(Json{{"command", "fermat-check"}, {"k", k.get_str()}, {"n", o_.fermat_n}, {"divides", divides}});
        else
            out_ << k << (divides ? " divides" : " does not divide") << " F_" << o_.fermat_n << '\n';
        return 0;
    }

    int relations_cmd()
    {
        const Discriminant d = parse_disc(require(o_.disc, "--disc"));
        const FactorBase base = build_factor_base(d, bound_for(d));
        CollectConfig cc = collect_config();
        cc.strategy = parse_strategy(o_.strategy);
        cc.target = o_.target;
        caveat();
        const auto rels = collect_relations(base, cc);
        if (!o_.relations_log.empty()) append_relation_log(o_.relations_log, rels, base);
        if (o_.json) {
            Json list = Json::array();
            for (const auto& r : rels) {
                Json rec = relation_record(r, base);
                rec.erase("disc");
                list.push_back(rec);
            }
            emit(Json{{"command", "relations"}, {"discriminant", d.value.get_str()}, {"strategy", strategy_name(cc.strategy)},
                      {"count", rels.size()}, {"relations", list}});
        } else {
            for (const auto& r : rels) {
                bool first = true;
                for (std::size_t i = 0; i < r.exponents.size(); ++i) {
                    if (r.exponents[i] == 0) continue;
                    out_ << (first ? "" : " ") << base[i].p << '^' << r.exponents[i];
                    first = false;
                }
                out_ << "  # " << r.witness << '\n';
            }
        }
        return 0;
    }

private:
    void emit(const Json& j) { out_ << j.dump() << '\n'; }

    void caveat()
    {
        if (o_.workers != 1)
            err_ << "note: relation search with " << (o_.workers > 0 ? std::to_string(o_.workers) : std::string("default"))
                 << " workers; deterministic replay is only guaranteed with --workers 1\n";
    }

    static const std::string& require(const std::string& v, const char* name)
    {
        if (v.empty()) throw Error(Errc::invalid_argument, std::string("missing ") + name);
        return v;
    }

    const std::string& single_form() const
    {
        if (o_.forms.size() != 1) throw Error(Errc::invalid_argument, "expected exactly one --form");
        return o_.forms[0];
    }

    Discriminant disc_or_from_form() const
    {
        if (!o_.disc.empty()) return parse_disc(o_.disc);
        return discriminant(parse_form(single_form()));
    }

    std::uint64_t bound_for(const Discriminant& d) const
    {
        return o_.fb_bound ? *o_.fb_bound : default_factor_base_bound(d);
    }

    CollectConfig collect_config() const
    {
        CollectConfig cc;
        cc.seed = o_.seed;
        cc.effort.scan_bound = o_.scan_bound;
        cc.power_cap = o_.power_cap;
        cc.workers = o_.workers;
        cc.max_trials = o_.max_trials;
        cc.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(o_.time_limit));
        return cc;
    }

    const ClassGroup& class_group(const Discriminant& d)
    {
        ClassGroupConfig cg;
        cg.fb_bound = o_.fb_bound;
        cg.seed = o_.seed;
        cg.effort.scan_bound = o_.scan_bound;
        cg.power_cap = o_.power_cap;
        cg.workers = o_.workers;
        cg.max_trials = o_.max_trials;
        cg.deadline = collect_config().deadline;
        if (o_.relations_log.empty()) {
            last_group_ = compute_class_group(d, cg);
            return last_group_;
        }
        // Resume: the logged relations seed the lattice, new ones are appended.
        const FactorBase base = build_factor_base(d, bound_for(d));
        auto logged = load_relation_log(o_.relations_log, base);
        for (const auto& r : logged)
            if (!verify_relation(r, base)) throw Error(Errc::condition_violated, "logged relation fails verification: " + r.witness);
        const std::size_t before = logged.size();
        std::vector<Relation> rels = logged;
        CollectConfig cc = collect_config();
        if (!base.empty()) saturate(base, cc, rels);
        std::vector<Relation> fresh(rels.begin() + static_cast<long>(before), rels.end());
        append_relation_log(o_.relations_log, fresh, base);
        last_group_ = ClassGroup{base, rels, group_structure(base, rels)};
        return last_group_;
    }

    const Options& o_;
    std::ostream& out_;
    std::ostream& err_;
    ClassGroup last_group_{FactorBase(Discriminant{}, 0, {}), {}, {}};
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Class group computations with binary quadratic forms", "simerka"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", o.seed, "random seed");
    app.add_option("--fb-bound", o.fb_bound, "factor base bound")->check(CLI::PositiveNumber);
    app.add_option("--scan-bound", o.scan_bound, "representation scan bound")->check(CLI::PositiveNumber);
    app.add_option("--power-cap", o.power_cap, "largest power in power walks")->check(CLI::PositiveNumber);
    app.add_option("--workers", o.workers, "relation search workers")->check(CLI::PositiveNumber);
    app.add_flag("--json", o.json, "emit one JSON object");
    app.add_option("--relations-log", o.relations_log, "relation log to append to and resume from");
    app.add_option("--max-trials", o.max_trials, "relation trial budget")->check(CLI::PositiveNumber);
    app.add_option("--time-limit", o.time_limit, "wall clock budget in seconds")->check(CLI::PositiveNumber);

    auto* reduce_c = app.add_subcommand("reduce", "reduce a form");
    reduce_c->add_option("--form", o.forms, "form A,B,C")->required();
    auto* compose_c = app.add_subcommand("compose", "compose forms");
    compose_c->add_option("--form", o.forms, "form A,B,C (repeat)")->required();
    auto* pow_c = app.add_subcommand("pow", "power of a form");
    pow_c->add_option("--form", o.forms, "form A,B,C")->required();
    pow_c->add_option("--exponent,-e", o.exponent, "exponent")->required();
    auto* order_c = app.add_subcommand("order", "exact order of a form");
    order_c->add_option("--disc", o.disc, "discriminant");
    order_c->add_option("--form", o.forms, "form A,B,C")->required();
    order_c->add_option("--multiple", o.multiple, "known multiple of the order");
    auto* class_c = app.add_subcommand("class", "class group structure");
    class_c->add_option("--disc", o.disc, "discriminant")->required();
    auto* factor_c = app.add_subcommand("factor", "factor an integer");
    factor_c->add_option("N", o.number, "integer to factor")->required();
    auto* carm_c = app.add_subcommand("carmichael", "Carmichael numbers below a limit");
    carm_c->add_option("--limit", o.limit, "exclusive limit")->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 40));
    auto* sigma_c = app.add_subcommand("sigma-demo", "squarefree n with sigma(n^3) a square");
    sigma_c->add_option("--prime-bound", o.prime_bound, "largest prime in the table")->check(CLI::Range(2, 1000));
    auto* fermat_c = app.add_subcommand("fermat-check", "does k divide the Fermat number F_n");
    fermat_c->add_option("--k", o.fermat_k, "candidate divisor")->required();
    fermat_c->add_option("--n", o.fermat_n, "Fermat index")->required();
    auto* rel_c = app.add_subcommand("relations", "collect relations over the factor base");
    rel_c->add_option("--disc", o.disc, "discriminant")->required();
    rel_c->add_option("--strategy", o.strategy, "SMALL_POWERS or RANDOM_PRODUCTS");
    rel_c->add_option("--target", o.target, "number of relations");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << "run with --help for usage\n";
        return 1;
    }

    Runner r(o, out, err);
    try {
        if (*reduce_c) return r.reduce_cmd();
        if (*compose_c) return r.compose_cmd();
        if (*pow_c) return r.pow_cmd();
        if (*order_c) return r.order_cmd();
        if (*class_c) return r.class_cmd();
        if (*factor_c) return r.factor_cmd();
        if (*carm_c) return r.carmichael_cmd();
        if (*sigma_c) return r.sigma_cmd();
        if (*fermat_c) return r.fermat_cmd();
        if (*rel_c) return r.relations_cmd();
    } catch (const Error& e) {
        err << "error (" << errc_name(e.code()) << "): " << e.what() << '\n';
        return e.is_budget() ? 2 : 1;
    }
    return 1;
}

} // namespace simerka::cli
