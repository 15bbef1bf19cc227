// twosq: command-line front end. Argument parsing only; the commands live
// in twosq/commands.hpp.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "twosq/commands.hpp"

int main(int argc, char** argv) {
    using namespace twosq::cli;

    CLI::App app{"Fermat two-squares decomposition with checkable proof traces"};
    app.require_subcommand(1);

    std::string p_arg, lo_arg, hi_arg, a_arg, m_arg;

    auto* decompose = app.add_subcommand("decompose", "print p = a^2 + b^2");
    decompose->add_option("p", p_arg, "prime p = 1 (mod 4)")->required();

    TraceOptions trace_opts;
    std::string trace_format = "json";
    auto* trace = app.add_subcommand("trace", "emit the residue table, gaps and certificates for p");
    trace->add_option("p", p_arg, "prime p = 1 (mod 4)")->required();
    trace->add_option("--format", trace_format, "json or text")->check(CLI::IsMember({"json", "text"}));
    trace->add_flag("--full-table", trace_opts.full_table, "do not elide table rows");

    ScanOptions scan_opts;
    std::string stats_out;
    auto* scan = app.add_subcommand("scan", "verify every prime p = 1 (mod 4) in [lo, hi]");
    scan->add_option("lo", lo_arg)->required();
    scan->add_option("hi", hi_arg)->required();
    scan->add_option("--jobs", scan_opts.jobs, "worker threads")->check(CLI::Range(1u, 1024u));
    scan->add_option("--stats-out", stats_out, "also write the stats JSON to this path");

    auto* thue = app.add_subcommand("thue", "min <a x>_m over 1 <= |x| <= sqrt(m)");
    thue->add_option("a", a_arg)->required();
    thue->add_option("m", m_arg)->required();

    BenchOptions bench_opts;
    auto* bench = app.add_subcommand("bench", "time decompositions of seeded random primes");
    const std::map<std::string, BenchMethod> methods{
        {"paper", BenchMethod::paper}, {"cornacchia", BenchMethod::cornacchia}, {"both", BenchMethod::both}};
    bench->add_option("--method", bench_opts.method, "paper, cornacchia or both")
        ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
    bench->add_option("--bits", bench_opts.bits, "bit length of sampled primes");
    bench->add_option("--count", bench_opts.count, "number of primes");
    bench->add_option("--seed", bench_opts.seed, "generator seed");

    auto* sqrtm1 = app.add_subcommand("sqrtm1", "print u with u^2 = -1 (mod p) by both witness paths");
    sqrtm1->add_option("p", p_arg)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_invalid;
    }

    auto& out = std::cout;
    auto& err = std::cerr;
    if (*decompose) return cmd_decompose(p_arg, out, err);
    if (*thue) return cmd_thue(a_arg, m_arg, out, err);
    if (*sqrtm1) return cmd_sqrtm1(p_arg, out, err);
    if (*bench) return cmd_bench(bench_opts, out, err);

    if (*trace || *scan) {
        twosq::u64 bound = 0;
        if (const int rc = guarded(err, [&] {
                bound = table_bound_from_env();
                return 0;
            });
            rc != 0) {
            return rc;
        }
        if (*trace) {
            trace_opts.format = trace_format == "text" ? TraceFormat::text : TraceFormat::json;
            trace_opts.table_bound = bound;
            return cmd_trace(p_arg, trace_opts, out, err);
        }
        scan_opts.table_bound = bound;
        if (!stats_out.empty()) scan_opts.stats_out = stats_out;
        return cmd_scan(lo_arg, hi_arg, scan_opts, out, err);
    }
    return exit_invalid;
}
