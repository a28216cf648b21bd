#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "corecur/corecur.hpp"

namespace corecur::cli {
namespace {

// Bad command-line values; reported as usage errors.
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class T>
T parse_number(std::string_view s, const char* what) {
    T v{};
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size() || s.empty()) {
        throw usage_error(std::string("invalid ") + what + ": '" + std::string(s) + "'");
    }
    return v;
}

template <class T>
std::vector<T> parse_csv(std::string_view s, const char* what) {
    std::vector<T> out;
    if (s.empty()) return out;
    std::size_t start = 0;
    while (true) {
        auto comma = s.find(',', start);
        out.push_back(parse_number<T>(detail::trim(s.substr(start, comma - start)), what));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw usage_error("cannot read '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::size_t fuse_from_env() {
    const char* v = std::getenv("CORECUR_FUSE");
    if (v == nullptr) return default_fuse;
    auto n = parse_number<std::size_t>(v, "CORECUR_FUSE");
    if (n == 0) throw usage_error("CORECUR_FUSE must be a positive integer");
    return n;
}

struct Options {
    bool trace = false;

    std::string algo = "quick";
    std::string input;

    std::string m;
    std::string n;

    std::string grammar;
    std::string word;

    std::string tree;
    std::string strategy;
    bool maxsteps = false;
    std::string policy = "left";
    std::uint64_t seed = 0;

    std::string graph;
    std::vector<std::string> ranks;
};

void dump_trace(const std::optional<CallTrace>& t, std::ostream& out) {
    if (t) t->dump(out);
}

int run_sort(const Options& o, std::ostream& out) {
    using sorting::ElemList;
    auto w = parse_csv<std::int64_t>(o.input, "list element");
    SolveConfig<ElemList<std::int64_t>> cfg;
    cfg.key = &sorting::list_key<std::int64_t>;
    cfg.trace = o.trace;
    cfg.fuse = fuse_from_env();
    auto r = o.algo == "quick" ? sorting::quicksort(w, cfg) : sorting::mergesort(w, cfg);
    bool ok = sorting::verify_sorted_permutation(w, r.value);
    out << sorting::format_list(r.value) << (ok ? " PASS" : " FAIL") << '\n';
    dump_trace(r.trace, out);
    return ok ? exit_ok : exit_domain;
}

int run_gcd(const Options& o, std::ostream& out) {
    auto m = parse_number<natural>(o.m, "natural");
    auto n = parse_number<natural>(o.n, "natural");
    SolveConfig<euclid::GcdInput> cfg;
    cfg.key = &euclid::input_key;
    cfg.trace = o.trace;
    cfg.fuse = fuse_from_env();
    auto r = euclid::gcd(m, n, cfg);
    const auto& c = r.value;
    bool ok = euclid::verify_cert(m, n, c);
    out << c << (ok ? " OK" : " FAIL") << '\n';
    out << "g*k = m: " << c.g << '*' << c.k << " = " << m << '\n';
    out << "g*l = n: " << c.g << '*' << c.l << " = " << n << '\n';
    out << "s*k + t*l = 1: " << c.s << '*' << c.k << " + " << c.t << '*' << c.l << " = 1\n";
    dump_trace(r.trace, out);
    return ok ? exit_ok : exit_domain;
}

int run_cyk(const Options& o, std::ostream& out) {
    auto g = cyk::parse_grammar(read_file(o.grammar));
    auto w = cyk::make_word(g, o.word);
    auto r = cyk::cyk(g, w, true, o.trace);
    out << cyk::format_set(g, r.set) << '\n';
    dump_trace(r.trace, out);
    return r.set.contains(g.start()) ? exit_ok : exit_domain;
}

hydra::LeafPolicy make_policy(const Options& o) {
    if (o.policy == "left") return hydra::leftmost_leaf();
    if (o.policy == "right") return hydra::rightmost_leaf();
    if (o.policy == "deep") return hydra::deepest_leaf();
    return hydra::random_leaf(o.seed);
}

int run_hydra(const Options& o, std::ostream& out) {
    auto t = hydra::parse_tree(o.tree);
    auto s = parse_csv<natural>(o.strategy, "strategy value");
    if (o.maxsteps) {
        hydra::MaxstepsLimits limits;
        limits.fuse = fuse_from_env();
        auto r = hydra::maxsteps(t, s, limits, o.trace);
        out << r.value << '\n';
        dump_trace(r.trace, out);
        return exit_ok;
    }
    auto game = hydra::play(t, s, make_policy(o));
    for (std::size_t i = 0; i < game.size(); ++i) {
        out << i << ' ' << game[i].rank << ' ' << hydra::format_tree(game[i].tree) << '\n';
    }
    return exit_ok;
}

int run_wfcheck(const Options& o, std::ostream& out) {
    auto g = parse_graph(read_file(o.graph));
    if (o.ranks.empty()) {
        if (auto c = find_cycle(g)) {
            out << "well-founded: no\ncycle:";
            for (auto x : *c) out << ' ' << g.name(x);
            out << '\n';
            return exit_domain;
        }
        out << "well-founded: yes\n";
        auto r = derive_min_rank(g);
        for (std::size_t x = 0; x < g.size(); ++x) out << g.name(x) << ": " << r[x] << '\n';
        return exit_ok;
    }
    std::vector<Ranking> rankings;
    for (const auto& path : o.ranks) rankings.push_back(parse_ranking(read_file(path), g));
    if (rankings.size() == 1) {
        bool ok = verify_ranking(g, rankings.front());
        out << "ranking: " << (ok ? "valid" : "invalid") << '\n';
        return ok ? exit_ok : exit_domain;
    }
    bool ok = disjunctive_wf(g, rankings);
    out << "disjunctive: " << (ok ? "yes" : "no") << '\n';
    return ok ? exit_ok : exit_domain;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Structured recursion with checked termination", "corecur"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--trace", o.trace, "Dump the solver's call trace");

    auto* sort = app.add_subcommand("sort", "Sort a list of integers");
    sort->add_option("--algo", o.algo)->check(CLI::IsMember({"quick", "merge"}));
    sort->add_option("--input", o.input, "Comma-separated integers")->required();

    auto* gcd = app.add_subcommand("gcd", "Extended Euclid with a Bezout certificate");
    gcd->add_option("m", o.m)->required();
    gcd->add_option("n", o.n)->required();

    auto* cyk = app.add_subcommand("cyk", "CYK membership test");
    cyk->add_option("--grammar", o.grammar, "Grammar file")->required();
    cyk->add_option("--word", o.word)->required();

    auto* hydra = app.add_subcommand("hydra", "Play the Hydra game");
    hydra->add_option("--tree", o.tree, "Tree in parenthesis form")->required();
    hydra->add_option("--strategy", o.strategy, "Comma-separated naturals")->required();
    hydra->add_flag("--maxsteps", o.maxsteps, "Longest game over all leaf choices");
    hydra->add_option("--policy", o.policy)->check(CLI::IsMember({"left", "right", "deep", "random"}));
    hydra->add_option("--seed", o.seed);

    auto* wf = app.add_subcommand("wfcheck", "Well-foundedness of a finite graph");
    wf->add_option("--graph", o.graph, "Graph file")->required();
    wf->add_option("--rank", o.ranks, "Ranking file; repeat for a disjunctive check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (sort->parsed()) return run_sort(o, out);
        if (gcd->parsed()) return run_gcd(o, out);
        if (cyk->parsed()) return run_cyk(o, out);
        if (hydra->parsed()) return run_hydra(o, out);
        return run_wfcheck(o, out);
    } catch (const usage_error& e) {
        err << "usage: " << e.what() << '\n';
        return exit_usage;
    } catch (const error& e) {
        err << e.name() << '\n' << e.what() << '\n';
        return exit_domain;
    } catch (const std::invalid_argument& e) {
        err << "InvalidInput\n" << e.what() << '\n';
        return exit_domain;
    }
}

}  // namespace corecur::cli
