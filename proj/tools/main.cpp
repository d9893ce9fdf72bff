// quartets: exact quartet-distance toolkit for prefix/suffix-ordered
// complete binary trees.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "quartets/cli.hpp"

namespace {

// --out redirects a command's stdout payload to a file
struct OutputTarget {
    std::string path;
    std::ofstream file;

    std::ostream& open() {
        if (path.empty()) return std::cout;
        file.open(path, std::ios::binary);
        if (!file) throw std::invalid_argument("cannot open output file: " + path);
        return file;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact quartet distances between prefix- and suffix-ordered "
                 "complete binary trees"};
    app.require_subcommand(1);

    int table_nmin = 3, table_nmax = 10;
    std::string table_format = "tsv";
    OutputTarget table_out;
    auto* table = app.add_subcommand("table", "distance/ratio table");
    table->add_option("--nmin", table_nmin, "first n (>= 2)");
    table->add_option("--nmax", table_nmax, "last n (<= 128)");
    table->add_option("--format", table_format, "tsv or json");
    table->add_option("--out", table_out.path, "write to file instead of stdout");

    int verify_n = 3;
    bool verify_brute = false;
    OutputTarget verify_out;
    auto* verify = app.add_subcommand("verify",
                                      "three-way check: brute force vs summation vs "
                                      "closed form (JSON report)");
    verify->add_option("--n", verify_n, "bit width (<= 6 with --brute, <= 64 without)")
        ->required();
    verify->add_flag("--brute", verify_brute, "include brute-force enumeration");
    verify->add_option("--out", verify_out.path, "write to file instead of stdout");

    std::string count_expr, count_method = "brute";
    int count_n = 3;
    OutputTarget count_out;
    auto* count = app.add_subcommand("count", "count 4-tuples satisfying an event");
    count->add_option("--event", count_expr,
                      "expression over P01..S23 with & | and parentheses")
        ->required();
    count->add_option("--n", count_n, "bit width")->required();
    count->add_option("--method", count_method,
                      "brute (x0=0^n), brute-full, closed, or sum; closed/sum cover "
                      "the four canonical intersections (restricted), A "
                      "(restricted), and A|B|C (full)");
    count->add_option("--out", count_out.path, "write to file instead of stdout");

    std::string topo_labels;
    OutputTarget topo_out;
    auto* topo = app.add_subcommand("topology", "prefix/suffix quartet of 4 labels");
    topo->add_option("--labels", topo_labels, "4 comma-separated equal-width labels")
        ->required();
    topo->add_option("--out", topo_out.path, "write to file instead of stdout");

    int newick_n = 3;
    std::string newick_order = "prefix";
    OutputTarget newick_out;
    auto* newick = app.add_subcommand("newick", "export a tree in Newick format");
    newick->add_option("--n", newick_n, "bit width (2..20)")->required();
    newick->add_option("--order", newick_order, "prefix or suffix")->required();
    newick->add_option("--out", newick_out.path, "write to file instead of stdout");

    std::string dist_t1, dist_t2;
    OutputTarget dist_out;
    auto* dist = app.add_subcommand("distance",
                                    "quartet distance between two Newick trees");
    dist->add_option("--tree1", dist_t1, "Newick file")->required();
    dist->add_option("--tree2", dist_t2, "Newick file")->required();
    dist->add_option("--out", dist_out.path, "write to file instead of stdout");

    int mono_nmax = 128;
    OutputTarget mono_out;
    auto* mono = app.add_subcommand("monotonic",
                                    "check the ratio decreases: cross-difference "
                                    "signs and derivative signs");
    mono->add_option("--nmax", mono_nmax, "check n in 3..nmax (and t in 11..nmax)");
    mono->add_option("--out", mono_out.path, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*table) return quartets::cmd_table(table_nmin, table_nmax, table_format,
                                               table_out.open());
        if (*verify) return quartets::cmd_verify(verify_n, verify_brute, verify_out.open());
        if (*count) return quartets::cmd_count(count_expr, count_n, count_method,
                                               count_out.open());
        if (*topo) return quartets::cmd_topology(topo_labels, topo_out.open());
        if (*newick) return quartets::cmd_newick(newick_n, newick_order, newick_out.open());
        if (*dist) return quartets::cmd_distance(dist_t1, dist_t2, dist_out.open());
        if (*mono) return quartets::cmd_monotonic(mono_nmax, mono_out.open());
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const quartets::newick_parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::logic_error& e) {
        // internal consistency failure (transcription bug, impossible tie)
        std::cerr << "verification failure: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
