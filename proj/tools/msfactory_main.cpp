// Copyright 2026 The msfactory Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "msfactory/gadgets.hpp"
#include "msfactory/report.hpp"
#include "msfactory/tables.hpp"

namespace {

using namespace msf;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

CircuitNoise parse_noise(const std::string &s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw UsageError("--noise expects kind:value, e.g. z:1e-4");
    std::string kind = s.substr(0, colon);
    double v;
    try {
        size_t used = 0;
        v = std::stod(s.substr(colon + 1), &used);
        if (used != s.size() - colon - 1) throw std::invalid_argument("trailing characters");
    } catch (const std::exception &) {
        throw UsageError("--noise: cannot parse number in '" + s + "'");
    }
    if (kind == "z") return CircuitNoise::z_only(v);
    if (kind == "pauli") return CircuitNoise::random_pauli(v);
    if (kind == "coherent") return CircuitNoise::coherent(v);
    // coherent-asin:x means excess angle arcsin(x)
    if (kind == "coherent-asin") {
        if (!(v >= -1 && v <= 1)) throw UsageError("--noise coherent-asin needs |x| <= 1");
        return CircuitNoise::coherent(std::asin(v));
    }
    throw UsageError("--noise kind must be z, pauli, coherent or coherent-asin");
}

void set_triple(const std::vector<int> &v, int &a, int &b, int &c, const char *flag) {
    if (v.size() != 3) throw UsageError(std::string(flag) + " expects three comma-separated distances");
    a = v[0];
    b = v[1];
    c = v[2];
}

struct Options {
    std::string format = "plain";
    // circuit
    std::string kind = "15to1";
    std::string noise = "z:1e-4";
    int count_order = -1;
    bool export_table = false;
    // factory / sweep
    std::string family = "l1_15to1";
    std::vector<int> d, d2;
    int n_l1 = 0;
    double pphys = 1e-4;
    double ct = 1;
    std::string consumption = "half";
    std::string config;
    std::string label;
    // table
    std::string table = "table1";
    // sweep
    double target = 1e-7;
    std::vector<int> dx, dz, dm, dx2, dz2, dm2, nl1;
    unsigned threads = 0;
};

ConsumptionPrefactor parse_consumption(const std::string &s) {
    if (s == "half") return ConsumptionPrefactor::half;
    if (s == "full") return ConsumptionPrefactor::full;
    throw UsageError("--consumption must be half or full");
}

int run_circuit(const Options &o) {
    auto c = catalog(parse_circuit_kind(o.kind));
    if (o.export_table) {
        std::cout << export_table(c);
        return kExitOk;
    }
    if (o.count_order >= 0) {
        std::cout << "undetected_sets(" << c.name << ", order " << o.count_order
                  << ") = " << undetected_error_sets(c, o.count_order) << "\n";
        return kExitOk;
    }
    auto noise = parse_noise(o.noise);
    auto r = simulate_circuit(c, noise);
    double p_out = to_double(r.p_out), p_fail = to_double(r.p_fail);
    auto f = parse_format(o.format);
    if (f == Format::json) {
        nlohmann::json j{{"circuit", c.name}, {"noise", o.noise}, {"p_out", p_out}, {"p_fail", p_fail}};
        std::cout << j.dump(2) << "\n";
    } else if (f == Format::csv) {
        std::cout << "circuit,noise,p_out,p_fail\n"
                  << c.name << ',' << o.noise << ',' << fmt_exact(p_out) << ',' << fmt_exact(p_fail) << "\n";
    } else {
        std::cout << c.name << " noise=" << o.noise << "\n  p_out  = " << fmt_sci(p_out, 6)
                  << "\n  p_fail = " << fmt_sci(p_fail, 6) << "\n";
    }
    return kExitOk;
}

int run_factory(const Options &o) {
    std::vector<FactoryConfig> configs;
    if (!o.config.empty()) {
        configs = load_config(o.config);
    } else {
        FactoryConfig c;
        c.family = parse_family(o.family);
        set_triple(o.d, c.distances.dX, c.distances.dZ, c.distances.dm, "--d");
        if (!o.d2.empty()) {
            int a, b, m;
            set_triple(o.d2, a, b, m, "--d2");
            c.distances.dX2 = a;
            c.distances.dZ2 = b;
            c.distances.dm2 = m;
        }
        if (o.n_l1) c.distances.nL1 = o.n_l1;
        c.noise = {o.pphys, o.ct};
        c.consumption = parse_consumption(o.consumption);
        c.label = o.label;
        c.validate();
        configs.push_back(c);
    }
    Level1Memo memo;
    std::vector<FactoryReport> reports;
    for (const auto &c : configs) reports.push_back(simulate_factory(c, &memo));
    std::cout << emit(reports, parse_format(o.format));
    return kExitOk;
}

int run_table(const Options &o) {
    auto rows = reference_rows(o.table);
    Level1Memo memo;
    std::vector<RowOutcome> outcomes;
    bool ok = true;
    for (const auto &r : rows) {
        outcomes.push_back(check_row(r, &memo));
        ok &= outcomes.back().pass();
    }
    auto f = parse_format(o.format);
    if (f == Format::plain) {
        std::vector<FactoryReport> reports;
        for (const auto &x : outcomes) reports.push_back(x.report);
        std::cout << emit(reports, Format::plain) << "\n";
        for (const auto &x : outcomes) std::cout << format_outcome(x);
        int pass = 0;
        for (const auto &x : outcomes) pass += x.pass();
        std::cout << "\n" << pass << "/" << outcomes.size() << " rows pass their gated checks\n";
    } else {
        std::vector<FactoryReport> reports;
        for (const auto &x : outcomes) reports.push_back(x.report);
        std::cout << emit(reports, f);
    }
    return ok ? kExitOk : kExitCheckFailed;
}

int run_sweep(const Options &o) {
    SweepRanges r{o.dx, o.dz, o.dm, o.dx2, o.dz2, o.dm2, o.nl1};
    auto fam = parse_family(o.family);
    if (r.dX.empty() || r.dZ.empty() || r.dm.empty()) throw UsageError("sweep needs --dx, --dz and --dm");
    for (const auto *v : {&r.dX, &r.dZ, &r.dm, &r.dX2, &r.dZ2, &r.dm2}) {
        for (int d : *v) {
            if (d < 1 || d % 2 == 0) throw UsageError("sweep distances must be positive odd integers, got " + std::to_string(d));
        }
    }
    if (is_two_level(fam) && (r.dX2.empty() || r.dZ2.empty() || r.dm2.empty())) {
        throw UsageError("two-level sweeps need --dx2, --dz2 and --dm2");
    }
    if (is_two_level(fam) && fam != FactoryFamily::L2_15x15_small && r.nL1.empty()) {
        throw UsageError("this family needs --n-l1");
    }
    Level1Memo memo;
    auto front = sweep(fam, r, {o.pphys, o.ct}, o.target, parse_consumption(o.consumption), &memo, o.threads);
    std::cout << emit(front, parse_format(o.format));
    return kExitOk;
}

int run_verify(const Options &) {
    bool all = true;
    auto line = [&](const std::string &what, bool ok) {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << what << "\n";
        all &= ok;
    };
    auto c15 = catalog(CircuitKind::fifteen_to_one);
    auto c20 = catalog(CircuitKind::twenty_to_four);
    auto c8 = catalog(CircuitKind::eight_to_ccz);
    line("identity16 is proportional to the identity",
         verify_equivalence(5, catalog(CircuitKind::identity16).rotations, {}));
    line("identity15_4q is proportional to the identity",
         verify_equivalence(4, catalog(CircuitKind::identity15_4q).rotations, {}));
    line("15-to-1 == Z_{-pi/8} on qubit 1", verify_equivalence(5, c15.rotations, {Rotation{PauliProduct::parse("ZIIII"), {-1}}}));
    line("8-to-CCZ == 7-rotation CCZ", verify_equivalence(c8, catalog(CircuitKind::ccz7)));
    {
        auto r = simulate_circuit(c20, CircuitNoise::z_only(0));
        line("20-to-4 prepares |m~>^4 |+>^3 noiselessly", r.p_out <= Quad(1e-10) && r.p_fail <= Quad(1e-10));
    }
    struct Count {
        const Circuit *c;
        int order;
        long long expect;
    } counts[] = {{&c15, 1, 0}, {&c15, 2, 0}, {&c15, 3, 35}, {&c20, 1, 0}, {&c20, 2, 22}, {&c8, 1, 0}, {&c8, 2, 28}};
    for (const auto &k : counts) {
        auto got = undetected_error_sets(*k.c, k.order);
        line("undetected sets " + k.c->name + " order " + std::to_string(k.order) + " = " + std::to_string(got) +
                 " (expect " + std::to_string(k.expect) + ")",
             got == k.expect);
    }
    for (auto [name, g] : {std::pair{"consumption", GadgetKind::consumption}, std::pair{"t_measurement", GadgetKind::t_measurement},
                           std::pair{"delayed_choice", GadgetKind::delayed_choice}, std::pair{"auto_corrected", GadgetKind::auto_corrected}}) {
        line(std::string("gadget ") + name, verify_gadget(g));
    }
    return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Magic-state factory simulator and cost estimator"};
    app.require_subcommand(1, 1);
    Options o;
    auto fmt_opt = [&](CLI::App *s) {
        s->add_option("--format", o.format, "plain, csv or json")->check(CLI::IsMember({"plain", "csv", "json"}));
    };

    auto *circ = app.add_subcommand("circuit", "Circuit-level (distance-free) simulation");
    circ->add_option("--kind", o.kind, "15to1, 20to4, 8toccz, identity16, identity15, ccz7");
    circ->add_option("--noise", o.noise, "z:P, pauli:P, coherent:RADIANS or coherent-asin:X");
    circ->add_option("--count", o.count_order, "print the number of undetected error sets of this order");
    circ->add_flag("--export", o.export_table, "print the rotation list");
    fmt_opt(circ);

    auto *fac = app.add_subcommand("factory", "Simulate one factory or every entry of a config file");
    fac->add_option("--family", o.family, "l1_15to1, l1_15to1_small, l2_15x15, l2_15x20, l2_15xccz, l2_15x15_small");
    fac->add_option("--d", o.d, "level-1 distances dX,dZ,dm")->delimiter(',');
    fac->add_option("--d2", o.d2, "level-2 distances dX2,dZ2,dm2")->delimiter(',');
    fac->add_option("--n-l1", o.n_l1, "number of level-1 blocks (even)");
    fac->add_option("--pphys", o.pphys, "physical error rate");
    fac->add_option("--ct", o.ct, "faulty-T-measurement multiplier");
    fac->add_option("--consumption", o.consumption, "level-2 consumption prefactor: half or full");
    fac->add_option("--label", o.label, "display name");
    fac->add_option("--config", o.config, "JSON config file (see README)");
    fmt_opt(fac);

    auto *tab = app.add_subcommand("table", "Reproduce a reference table with per-row checks");
    tab->add_option("--name", o.table, "table1 or table2")->check(CLI::IsMember({"table1", "table2"}));
    fmt_opt(tab);

    auto *sw = app.add_subcommand("sweep", "Pareto front over distance ranges");
    sw->add_option("--family", o.family, "protocol family")->required();
    sw->add_option("--pphys", o.pphys, "physical error rate");
    sw->add_option("--ct", o.ct, "faulty-T-measurement multiplier");
    sw->add_option("--target", o.target, "maximum p_out");
    sw->add_option("--dx", o.dx, "candidate values, comma separated")->delimiter(',');
    sw->add_option("--dz", o.dz, "candidate values, comma separated")->delimiter(',');
    sw->add_option("--dm", o.dm, "candidate values, comma separated")->delimiter(',');
    sw->add_option("--dx2", o.dx2, "candidate values, comma separated")->delimiter(',');
    sw->add_option("--dz2", o.dz2, "candidate values, comma separated")->delimiter(',');
    sw->add_option("--dm2", o.dm2, "candidate values, comma separated")->delimiter(',');
    sw->add_option("--n-l1", o.nl1, "candidate values, comma separated")->delimiter(',');
    sw->add_option("--consumption", o.consumption, "half or full");
    sw->add_option("--threads", o.threads, "worker threads (0 = hardware)");
    fmt_opt(sw);

    auto *ver = app.add_subcommand("verify", "Identity, counting and gadget checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*circ) return run_circuit(o);
        if (*fac) return run_factory(o);
        if (*tab) return run_table(o);
        if (*sw) return run_sweep(o);
        if (*ver) return run_verify(o);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConfigError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
