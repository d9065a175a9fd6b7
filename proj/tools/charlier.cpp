// charlier: recurrence tables and verification suites for generalized
// Charlier polynomials.
//
//   charlier recurrence --lattice N --a 1 --beta 1.5 --nmax 10 --source hankel
//   charlier verify --suite all
//   charlier scan --a-min 0.5 --a-max 2 --steps 4 --beta 1.5 --nmax 5
//
// Exit codes: 0 ok, 1 verification failed, 2 usage or invalid parameters,
// 3 precision certificate failure, 4 singularity.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "charlier/laxchain.hpp"
#include "charlier/oracle.hpp"
#include "charlier/painleve.hpp"
#include "charlier/report.hpp"
#include "charlier/suites.hpp"
#include "charlier/tableio.hpp"

namespace {

using namespace charlier;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitSingular = 4;

struct Config {
    std::string lattice = "N";
    std::string a = "1";
    std::string beta = "1.5";
    std::string tau = "1";
    long n_max = 10;
    std::string source = "hankel";
    long prec_bits = 512;
    std::string format = "csv";
    std::string output;

    // verify
    std::string suite = "all";
    std::vector<std::string> a_list;
    std::vector<std::string> beta_list;
    std::vector<std::string> lattice_list;
    std::vector<std::string> tau_list;

    // scan
    std::string a_min = "0.5";
    std::string a_max = "2";
    long steps = 4;
};

long default_precision()
{
    if (const char* env = std::getenv("CHARLIER_PREC_BITS")) {
        try {
            return std::stol(env);
        } catch (const std::exception&) {
            throw DomainError(std::string("CHARLIER_PREC_BITS is not an integer: ") + env);
        }
    }
    return 512;
}

void check_common(const Config& c)
{
    if (c.prec_bits < kMinPrecision) {
        throw DomainError("--prec-bits must be at least " + std::to_string(kMinPrecision));
    }
    if (c.n_max < 0) {
        throw DomainError("--nmax must be nonnegative");
    }
    if (c.format != "csv" && c.format != "json") {
        throw DomainError("--format must be csv or json");
    }
}

MeasureSpec spec_from(const Config& c, const std::string& a)
{
    const Lattice lattice = parse_lattice(c.lattice);
    MeasureSpec spec = lattice == Lattice::N         ? MeasureSpec::on_n(a, c.beta)
                       : lattice == Lattice::Shifted ? MeasureSpec::shifted(a, c.beta)
                                                     : MeasureSpec::bilattice(a, c.beta, c.tau);
    // Parse every decimal once up front so malformed input fails before any work.
    (void)spec.a.at(kMinPrecision);
    (void)spec.beta.at(kMinPrecision);
    (void)spec.tau.at(kMinPrecision);
    spec.validate();
    return spec;
}

RecurrenceTable compute(const MeasureSpec& spec, long n_max, Source source, Precision prec)
{
    switch (source) {
    case Source::Hankel:
        return oracle::recurrence_from_hankel(spec, n_max, prec);
    case Source::Stieltjes:
        return oracle::recurrence_from_stieltjes(spec, n_max, prec);
    case Source::Recursion:
        return laxchain::recurrence_forward(spec, n_max, prec);
    case Source::P5Chain:
        break;
    }
    return painleve::p5_chain(spec, n_max, prec);
}

void emit(const Config& c, const std::string& text)
{
    if (c.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(c.output);
    if (!out) {
        throw DomainError("cannot open output file " + c.output);
    }
    out << text;
}

int cmd_recurrence(const Config& c)
{
    check_common(c);
    const MeasureSpec spec = spec_from(c, c.a);
    const Source source = parse_source(c.source);
    const RecurrenceTable t = compute(spec, c.n_max, source, c.prec_bits);
    emit(c, c.format == "csv" ? table_to_csv(t) : table_to_json(t).dump(2) + "\n");
    return 0;
}

int cmd_verify(const Config& c)
{
    check_common(c);
    suites::GridOptions grid;
    grid.n_max = c.n_max;
    grid.prec = c.prec_bits;
    if (!c.a_list.empty()) {
        grid.a = c.a_list;
    }
    if (!c.beta_list.empty()) {
        grid.beta = c.beta_list;
    }
    if (!c.tau_list.empty()) {
        grid.tau = c.tau_list;
    }
    if (!c.lattice_list.empty()) {
        grid.lattices.clear();
        for (const auto& l : c.lattice_list) {
            grid.lattices.push_back(parse_lattice(l));
        }
    }
    for (const auto& v : grid.a) {
        if (!(BigReal::parse(v, kMinPrecision) > 0)) {
            throw DomainError("a must be positive, got " + v);
        }
    }
    for (const auto& v : grid.beta) {
        BigReal::parse(v, kMinPrecision);
    }
    for (const auto& v : grid.tau) {
        BigReal::parse(v, kMinPrecision);
    }
    const VerificationReport r = suites::run_suite(c.suite, grid);
    emit(c, serialize(r, 2) + "\n");
    std::cerr << r.suite << ": " << r.cells.size() << " cells, " << r.failures() << " failing, "
              << (r.pass ? "PASS" : "FAIL") << " (" << r.wall_time << " s)\n";
    return r.pass ? 0 : kExitFail;
}

int cmd_scan(const Config& c)
{
    check_common(c);
    if (c.steps < 1) {
        throw DomainError("--steps must be positive");
    }
    const Precision prec = c.prec_bits;
    const BigReal lo = BigReal::parse(c.a_min, prec);
    const BigReal hi = BigReal::parse(c.a_max, prec);
    if (!(lo > 0) || hi < lo) {
        throw DomainError("scan range must satisfy 0 < a-min <= a-max");
    }
    const Source source = parse_source(c.source);
    std::vector<RecurrenceTable> tables;
    const long count = lo == hi ? 1 : c.steps;
    for (long k = 0; k < count; ++k) {
        std::string a_text;
        if (k == 0) {
            a_text = c.a_min;
        } else if (k == count - 1) {
            a_text = c.a_max;
        } else {
            a_text = (lo + (hi - lo) * k / (count - 1)).to_string();
        }
        tables.push_back(compute(spec_from(c, a_text), c.n_max, source, prec));
    }
    emit(c, c.format == "csv" ? scan_to_csv(tables) : scan_to_json(tables).dump(2) + "\n");
    return 0;
}

void add_measure_options(CLI::App* cmd, Config& c)
{
    cmd->add_option("--lattice", c.lattice, "N, shifted or bilattice")->capture_default_str();
    cmd->add_option("--beta", c.beta, "beta (decimal)")->capture_default_str();
    cmd->add_option("--tau", c.tau, "bi-lattice mixing ratio (decimal)")->capture_default_str();
}

void add_common_options(CLI::App* cmd, Config& c)
{
    cmd->add_option("--nmax", c.n_max, "largest index n")->capture_default_str();
    cmd->add_option("--prec-bits", c.prec_bits, "working precision in bits (env CHARLIER_PREC_BITS)")
        ->capture_default_str();
    cmd->add_option("--format", c.format, "csv or json")->capture_default_str();
    cmd->add_option("--output,-o", c.output, "output file (default stdout)");
}

} // namespace

int main(int argc, char** argv)
{
    Config c;
    try {
        c.prec_bits = default_precision();
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    CLI::App app{"Recurrence coefficients of generalized Charlier polynomials"};
    app.require_subcommand(1);

    auto* rec = app.add_subcommand("recurrence", "compute a table of (a_n^2, b_n)");
    add_measure_options(rec, c);
    rec->add_option("--a", c.a, "a > 0 (decimal)")->capture_default_str();
    rec->add_option("--source", c.source, "hankel, stieltjes, recursion or p5chain")->capture_default_str();
    add_common_options(rec, c);

    auto* ver = app.add_subcommand("verify", "run a verification suite and write its JSON report");
    ver->add_option("--suite", c.suite, "discrete, toda, riccati, pearson, symmetry, p5chain, p3, beta1 or all")
        ->capture_default_str();
    ver->add_option("--a", c.a_list, "values of a (default 1)")->delimiter(',');
    ver->add_option("--beta", c.beta_list, "values of beta (default 0.5,1.5)")->delimiter(',');
    ver->add_option("--lattice", c.lattice_list, "lattices (default all)")->delimiter(',');
    ver->add_option("--tau", c.tau_list, "bi-lattice ratios (default 1,2)")->delimiter(',');
    add_common_options(ver, c);

    auto* scan = app.add_subcommand("scan", "tables over an equally spaced range of a (long-format CSV)");
    add_measure_options(scan, c);
    scan->add_option("--a-min", c.a_min, "first a")->capture_default_str();
    scan->add_option("--a-max", c.a_max, "last a")->capture_default_str();
    scan->add_option("--steps", c.steps, "number of a values")->capture_default_str();
    scan->add_option("--source", c.source, "hankel, stieltjes, recursion or p5chain")->capture_default_str();
    add_common_options(scan, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (rec->parsed()) {
            return cmd_recurrence(c);
        }
        if (ver->parsed()) {
            return cmd_verify(c);
        }
        return cmd_scan(c);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const PrecisionError& e) {
        std::cerr << "precision error: " << e.what() << '\n';
        return kExitPrecision;
    } catch (const SingularityError& e) {
        std::cerr << "singularity: " << e.what() << '\n';
        return kExitSingular;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
}
