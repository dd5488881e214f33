// tpbd: bidiagonal decompositions of Bessel-type collocation matrices and
// the accuracy experiments built on them.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tpbd/tpbd.hpp"

namespace {

constexpr int exit_validation = 2;
constexpr int exit_convergence = 3;

struct options {
    std::string basis = "bessel";
    std::string nodes;
    std::size_t n = 0;
    std::string matrix_path;
    std::string bdf_path;
    std::string rhs_path;
    std::string out;
    double tol = 1e-16;
    long max_bits = 16384;
    std::uint64_t seed = 1;
    int table_id = 1;
    std::string figure_id = "val";
    std::size_t n_max = 15;
    bool as_double = false;
};

// Writes to --out if given, stdout otherwise.
class sink {
public:
    explicit sink(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw tpbd::parse_error("cannot open " + path + " for writing");
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw tpbd::parse_error("cannot open " + path);
    return in;
}

tpbd::node_sequence resolve_nodes(const options& o) {
    if (!o.nodes.empty()) return tpbd::node_sequence::parse(o.nodes);
    if (o.n == 0) throw tpbd::invalid_nodes("give --nodes or --n");
    return tpbd::node_sequence::integers(o.n);
}

tpbd::precision_policy policy_for(const options& o) {
    auto p = tpbd::precision_policy::for_target(o.tol);
    p.max_bits = o.max_bits;
    p.check();
    return p;
}

tpbd::bidiagonal_decomposition load_bdf(const options& o) {
    auto in = open_input(o.bdf_path);
    auto b = tpbd::read_bdf(in);
    const auto problems = tpbd::validate(b);
    if (!problems.empty()) throw tpbd::not_totally_positive("invalid BD: " + problems.front());
    return b;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_value(const tpbd::rational& q, bool as_double) {
    return as_double ? format_double(tpbd::round_to_double(q)) : q.str();
}

void run_gen_bd(const options& o) {
    tpbd::bidiagonal_decomposition b;
    if (!o.matrix_path.empty()) {
        auto in = open_input(o.matrix_path);
        b = tpbd::bd_from_matrix(tpbd::read_matrix(in));
    } else {
        b = tpbd::bd_collocation(tpbd::parse_basis(o.basis), resolve_nodes(o));
    }
    sink s(o.out);
    tpbd::write_bdf(s.stream(), b);
}

void run_spectrum(const options& o, bool eig) {
    const auto b = load_bdf(o);
    const auto r = eig ? tpbd::eigenvalues(b, policy_for(o)) : tpbd::singular_values(b, policy_for(o));
    sink s(o.out);
    s.stream() << "index,value,achieved_bits\n";
    for (std::size_t i = 0; i < r.values.size(); ++i)
        s.stream() << i + 1 << ',' << format_double(r.values[i]) << ',' << r.achieved_precision_bits << '\n';
}

void run_inv(const options& o) {
    const auto inv = tpbd::inverse(load_bdf(o));
    sink s(o.out);
    for (std::size_t i = 0; i < inv.rows(); ++i) {
        for (std::size_t j = 0; j < inv.cols(); ++j) s.stream() << (j ? "," : "") << format_value(inv(i, j), o.as_double);
        s.stream() << '\n';
    }
}

void run_solve(const options& o) {
    const auto b = load_bdf(o);
    auto in = open_input(o.rhs_path);
    std::vector<tpbd::rational> rhs;
    std::string tok;
    while (in >> tok) {
        std::stringstream parts(tok);
        std::string piece;
        while (std::getline(parts, piece, ','))
            if (!piece.empty()) rhs.push_back(tpbd::rational::parse(piece));
    }
    const auto x = tpbd::solve(b, rhs);
    sink s(o.out);
    s.stream() << "i,value\n";
    for (std::size_t i = 0; i < x.size(); ++i) s.stream() << i + 1 << ',' << format_value(x[i], o.as_double) << '\n';
}

void run_table(const options& o) {
    tpbd::experiments::table_config cfg;
    cfg.basis = tpbd::parse_basis(o.basis);
    cfg.n = o.n == 0 ? 20 : o.n;
    cfg.seed = o.seed;
    cfg.policy = policy_for(o);
    const auto t = tpbd::experiments::run_table(o.table_id, cfg);
    sink s(o.out);
    tpbd::experiments::write_csv(s.stream(), t);
}

// --out names a prefix: <out>.csv and <out>.svg. Without it the CSV goes
// to stdout and no SVG is drawn.
void run_figure(const options& o) {
    const auto id = tpbd::experiments::parse_figure_id(o.figure_id);
    const auto f = tpbd::experiments::run_figure(id, o.n_max, policy_for(o));
    if (o.out.empty()) {
        tpbd::experiments::write_csv(std::cout, f);
        return;
    }
    sink csv(o.out + ".csv");
    tpbd::experiments::write_csv(csv.stream(), f);
    sink svg(o.out + ".svg");
    const std::string family = id.basis == tpbd::basis_kind::bessel ? "Bessel" : "reverse Bessel";
    const std::string what = id.kind == tpbd::experiments::figure_kind::values
                                 ? "minimal eigenvalue / singular value"
                                 : "inverse";
    tpbd::experiments::write_svg(svg.stream(), f, "Relative error, " + what + ", " + family + " matrices");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bidiagonal decompositions of totally positive collocation matrices"};
    app.require_subcommand(1);
    options o;

    auto add_common = [&o](CLI::App* c) {
        c->add_option("--out", o.out, "output path (stdout if omitted)");
        c->add_option("--tol", o.tol, "target relative accuracy")->check(CLI::PositiveNumber);
        c->add_option("--max-bits", o.max_bits, "precision cap for the multiprecision iterations");
    };
    auto add_basis = [&o](CLI::App* c) {
        c->add_option("--basis", o.basis, "bessel, rbessel or monomial")
            ->check(CLI::IsMember({"bessel", "rbessel", "monomial"}));
    };

    auto* gen = app.add_subcommand("gen-bd", "write the BDF file of a collocation matrix");
    add_basis(gen);
    add_common(gen);
    auto* nodes_opt = gen->add_option("--nodes", o.nodes, "comma-separated rational nodes, e.g. 1,3/2,2");
    auto* n_opt = gen->add_option("--n", o.n, "use nodes 1..n");
    auto* matrix_opt = gen->add_option("--matrix", o.matrix_path, "read a matrix file instead of a basis");
    nodes_opt->excludes(n_opt);
    matrix_opt->excludes(nodes_opt)->excludes(n_opt);

    auto* eig = app.add_subcommand("eig", "eigenvalues of the matrix given by a BDF file");
    auto* svd = app.add_subcommand("svd", "singular values of the matrix given by a BDF file");
    auto* inv = app.add_subcommand("inv", "exact inverse");
    auto* slv = app.add_subcommand("solve", "exact solution of A x = b");
    for (auto* c : {eig, svd, inv, slv}) {
        c->add_option("bdf", o.bdf_path, "BDF file")->required();
        add_common(c);
    }
    for (auto* c : {inv, slv}) c->add_flag("--double", o.as_double, "round the exact result to double");
    slv->add_option("--rhs", o.rhs_path, "file of rational tokens")->required();

    auto* tab = app.add_subcommand("table", "error comparison table");
    tab->add_option("id", o.table_id, "1 eig, 2 svd, 3 inverse, 4/5 solve")->required()->check(CLI::Range(1, 5));
    add_basis(tab);
    add_common(tab);
    tab->add_option("--n", o.n, "order (default 20)");
    tab->add_option("--seed", o.seed, "seed for the right-hand sides");

    auto* fig = app.add_subcommand("figure", "error sweep over the order");
    fig->add_option("id", o.figure_id, "val, inv, valR or invR")
        ->required()
        ->check(CLI::IsMember({"val", "inv", "valR", "invR"}));
    add_common(fig);
    fig->add_option("--n-max", o.n_max, "largest order (2..25)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_validation;
    }

    try {
        if (*gen) run_gen_bd(o);
        else if (*eig) run_spectrum(o, true);
        else if (*svd) run_spectrum(o, false);
        else if (*inv) run_inv(o);
        else if (*slv) run_solve(o);
        else if (*tab) run_table(o);
        else if (*fig) run_figure(o);
    } catch (const tpbd::no_convergence& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_convergence;
    } catch (const tpbd::error& e) {
        std::cerr << "error (" << e.code() << "): " << e.what() << '\n';
        return exit_validation;
    }
    return 0;
}
