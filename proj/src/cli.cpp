#include "hc/cli.hpp"

#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hc/contact_homology.hpp"
#include "hc/errors.hpp"
#include "hc/handle_dynamics.hpp"
#include "hc/io.hpp"
#include "hc/morse_complex.hpp"
#include "hc/symplectic_index.hpp"
#include "hc/word_combinatorics.hpp"

namespace hc::cli {

namespace {

contact::Window parse_window(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos)
        throw ParseError("window must be LO:HI, got '" + s + "'");
    try {
        // lo > hi is allowed here: an empty window is a vacuous pass for the
        // shift check, while complex construction rejects it downstream.
        return contact::Window{std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
    } catch (const std::invalid_argument&) {
        throw ParseError("window bounds must be integers, got '" + s + "'");
    } catch (const std::out_of_range&) {
        throw ParseError("window bounds out of range in '" + s + "'");
    }
}

std::string fmt_eig(const std::complex<double>& e) {
    std::string s = io::fmt_double(e.real());
    if (e.imag() != 0.0) s += (e.imag() > 0 ? "+" : "") + io::fmt_double(e.imag()) + "i";
    return s;
}

std::string pi_multiple(const Rational& r) { return "pi*" + rational_str(r); }

struct IndexArgs {
    std::vector<double> rotations;
    std::vector<std::string> hyperbolics;
    int identities = 0;
    double T = 0.0;
    long long multiplicity = 1;
    std::string format = "human";
};

int cmd_index(const IndexArgs& a, std::ostream& out) {
    cz::BlockPath path;
    for (double w : a.rotations) path.blocks.push_back(cz::Rotation{w});
    for (const auto& s : a.hyperbolics) {
        const auto comma = s.find(',');
        if (comma == std::string::npos)
            throw ParseError("--hyperbolic takes a,b — got '" + s + "'");
        double pa = 0, pb = 0;
        try {
            pa = std::stod(s.substr(0, comma));
            pb = std::stod(s.substr(comma + 1));
        } catch (const std::exception&) {
            throw ParseError("--hyperbolic takes two reals, got '" + s + "'");
        }
        if (!(pa > 0) || !(pb > 0))
            throw ParseError("hyperbolic parameters must be positive (eigenvalues e^{±√(ab)t})");
        path.blocks.push_back(cz::Hyperbolic{pa, pb});
    }
    for (int i = 0; i < a.identities; ++i) path.blocks.push_back(cz::ConstantIdentity{});
    if (path.blocks.empty()) throw ParseError("give at least one --rotation/--hyperbolic/--identity");
    if (!(a.T > 0)) throw ParseError("--T must be positive");
    if (a.multiplicity < 1) throw ParseError("--multiplicity must be at least 1");

    path.T = a.T;  // simple period
    const auto info = cz::classify_return_map(path);
    cz::BlockPath covered = path;
    covered.T = a.T * (double)a.multiplicity;
    const auto mu = cz::rs_index_blocks(covered);
    // Blocks describe the contact hyperplane along the orbit, so 2d = 2(n-1).
    const int n = (int)path.blocks.size() + 1;
    const auto obar = cz::reduced_index(mu, n);

    io::Table t;
    t.command = "index";
    t.meta = {{"blocks", std::to_string(path.blocks.size())},
              {"T", io::fmt_double(a.T)},
              {"multiplicity", std::to_string(a.multiplicity)}};
    t.columns = {"mu", "o_bar", "n_gamma", "degenerate", "good", "eigenvalues"};
    std::string eigs;
    for (std::size_t i = 0; i < info.eigenvalues.size(); ++i)
        eigs += (i ? ";" : "") + fmt_eig(info.eigenvalues[i]);
    t.rows = {{mu.str(), obar.str(), std::to_string(info.n_gamma),
               io::fmt_bool(info.degenerate),
               io::fmt_bool(cz::is_good(info.n_gamma, a.multiplicity)), eigs}};
    io::render_table(t, io::parse_format(a.format), out);
    return 0;
}

struct OrbitArgs {
    std::string doc_path;
    std::string handle_id;
    std::string cutoff;
    std::string format = "human";
};

int cmd_orbits(const OrbitArgs& a, std::ostream& out) {
    const auto doc = io::load_document(a.doc_path);
    const handle::ModelHandle* h = nullptr;
    std::string hid = a.handle_id;
    if (hid.empty()) {
        if (doc.handles.size() != 1)
            throw InvalidData("document has " + std::to_string(doc.handles.size()) +
                              " handles; pick one with --handle");
        hid = doc.handles.front().first;
        h = &doc.handles.front().second;
    } else {
        h = io::find_handle(doc, hid);
        if (!h) throw InvalidData("no handle '" + hid + "' in the document");
    }
    Rational cutoff;
    if (!a.cutoff.empty())
        cutoff = parse_rational(a.cutoff);
    else if (doc.options.action_cutoff)
        cutoff = *doc.options.action_cutoff;
    else
        throw InvalidData("no action cutoff: pass --cutoff or set options.action_cutoff");

    const auto orbits = handle::enumerate_orbits(*h, cutoff);
    io::Table t;
    t.command = "orbits";
    t.meta = {{"handle", hid}, {"cutoff", pi_multiple(cutoff)}};
    t.columns = {"l", "m", "period", "action", "mu", "o_bar", "nondegenerate", "good"};
    for (const auto& o : orbits)
        t.rows.push_back({std::to_string(o.l), std::to_string(o.m),
                          pi_multiple(o.period_over_pi), pi_multiple(o.action_over_pi),
                          o.mu.str(), o.reduced.str(), io::fmt_bool(o.nondegenerate),
                          io::fmt_bool(o.good)});
    io::render_table(t, io::parse_format(a.format), out);
    return 0;
}

int cmd_homology(const std::string& doc_path, const std::string& format, std::ostream& out,
                 std::ostream& err) {
    const auto doc = io::load_document(doc_path);
    const auto viol = morse::validate(doc.morse);
    if (!viol.empty()) {
        for (const auto& v : viol)
            err << "violation: " << morse::violation_name(v.kind) << " — " << v.detail << "\n";
        return 3;
    }
    const auto betti = morse::homology_ranks(doc.morse);
    io::Table t;
    t.command = "homology";
    t.columns = {"degree", "rank"};
    for (int j = 0; j < doc.n; ++j)
        t.rows.push_back({std::to_string(j), std::to_string(betti.at(j))});
    io::render_table(t, io::parse_format(format), out);
    return 0;
}

struct HcArgs {
    std::string doc_path;
    std::string target = "M";
    std::string route = "both";
    std::string window;
    long long m_o = 0;
    std::string format = "human";
};

int cmd_hc(const HcArgs& a, std::ostream& out, std::ostream& err) {
    const auto doc = io::load_document(a.doc_path);
    contact::Target target;
    if (a.target == "M")
        target = contact::Target::M;
    else if (a.target == "Mprime")
        target = contact::Target::MPrime;
    else
        throw ParseError("--target must be M or Mprime");
    if (a.route != "chain" && a.route != "closed" && a.route != "both")
        throw ParseError("--route must be chain, closed, or both");

    contact::Window w{0, 10};
    if (!a.window.empty())
        w = parse_window(a.window);
    else if (doc.options.window)
        w = *doc.options.window;
    long long m_o = a.m_o > 0 ? a.m_o : doc.options.m_o.value_or(contact::default_m_o(w));

    io::Table t;
    t.command = "hc";
    t.meta = {{"target", a.target},
              {"route", a.route},
              {"window", std::to_string(w.lo) + ":" + std::to_string(w.hi)},
              {"m_o", std::to_string(m_o)}};

    morse::GradedRanks chain;
    if (a.route != "closed") {
        const auto cx = contact::build_hc_complex(doc.morse, m_o, w, target);
        const int dim_M = target == contact::Target::M ? 2 * doc.n - 1 : 2 * doc.n + 1;
        for (const auto& warn : contact::d_squared_guard(cx, dim_M))
            err << "warning: " << warn << "\n";
        chain = contact::hc_ranks_chain(cx);
    }

    bool mismatch = false;
    if (a.route == "both") {
        t.columns = {"degree", "rank_chain", "rank_closed", "match"};
        for (int i = w.lo; i <= w.hi; ++i) {
            const long long rc = chain.at(i);
            const long long rf = contact::hc_ranks_closed_form(doc.morse, i, target);
            if (rc != rf) mismatch = true;
            t.rows.push_back({std::to_string(i), std::to_string(rc), std::to_string(rf),
                              io::fmt_bool(rc == rf)});
        }
    } else {
        t.columns = {"degree", "rank"};
        for (int i = w.lo; i <= w.hi; ++i) {
            const long long r = a.route == "chain"
                                    ? chain.at(i)
                                    : contact::hc_ranks_closed_form(doc.morse, i, target);
            t.rows.push_back({std::to_string(i), std::to_string(r)});
        }
    }
    io::render_table(t, io::parse_format(a.format), out);
    if (mismatch) {
        err << "theorem check failed: chain and closed-form ranks disagree\n";
        return 5;
    }
    return 0;
}

struct WordArgs {
    int n = 0;
    std::string mode;
    long long samples = 1000000;
    std::uint64_t seed = 0;
    long long cap = 1000000;
    bool serial = false;
    std::string format = "human";
};

int cmd_words(const WordArgs& a, std::ostream& out) {
    if (a.n < 2) throw ParseError("--n must be at least 2");
    words::LemmaMode mode;
    if (a.mode.empty())
        mode = a.n <= 3 ? words::LemmaMode::Exhaustive : words::LemmaMode::Randomized;
    else if (a.mode == "exhaustive")
        mode = words::LemmaMode::Exhaustive;
    else if (a.mode == "sample" || a.mode == "randomized")
        mode = words::LemmaMode::Randomized;
    else
        throw ParseError("--mode must be exhaustive or sample");

    words::LemmaOptions opt;
    opt.budget_cap = a.cap;
    opt.parallel = !a.serial;
    const auto rep = words::verify_word_lemma(a.n, mode, a.samples, a.seed, opt);

    const auto fmt = io::parse_format(a.format);
    const bool exhaustive = rep.mode == words::LemmaMode::Exhaustive;
    std::string examples;
    for (std::size_t i = 0; i < rep.counterexamples.size(); ++i) {
        std::string ws;
        for (int l : rep.counterexamples[i].letters) ws += std::to_string(l);
        examples += (i ? ";" : "") + ws;
    }
    if (fmt == io::Format::Human) {
        out << rep.checked << " words, " << rep.counterexamples.size() << " counterexamples\n";
        if (!examples.empty()) out << "counterexamples: " << examples << "\n";
        return 0;
    }
    io::Table t;
    t.command = "words";
    t.columns = {"n", "mode", "length", "checked", "counterexamples", "seed", "examples"};
    t.rows = {{std::to_string(rep.n), exhaustive ? "exhaustive" : "sample",
               std::to_string(rep.word_length), std::to_string(rep.checked),
               std::to_string(rep.counterexamples.size()),
               exhaustive ? "-" : std::to_string(rep.seed), examples}};
    io::render_table(t, fmt, out);
    return 0;
}

int cmd_shift(const std::string& doc_path, const std::string& window, const std::string& format,
              std::ostream& out, std::ostream& err) {
    const auto doc = io::load_document(doc_path);
    contact::Window w{0, 10};
    if (!window.empty())
        w = parse_window(window);
    else if (doc.options.window)
        w = *doc.options.window;
    const auto viol = morse::validate(doc.morse);
    if (!viol.empty())
        throw InvalidData("Morse data invalid: " + morse::violation_name(viol.front().kind) +
                          " — " + viol.front().detail);
    const auto rep = contact::check_degree_shift(doc.morse, w);
    io::Table t;
    t.command = "shift";
    t.meta = {{"window", std::to_string(w.lo) + ":" + std::to_string(w.hi)}};
    t.columns = {"degree", "rank_M", "rank_Mprime_shifted", "match"};
    for (const auto& r : rep.rows)
        t.rows.push_back({std::to_string(r.degree), std::to_string(r.rank_m),
                          std::to_string(r.rank_m_prime_shifted),
                          io::fmt_bool(r.rank_m == r.rank_m_prime_shifted)});
    io::render_table(t, io::parse_format(format), out);
    if (!rep.all_match) {
        err << "theorem check failed: degree shift violated\n";
        return 5;
    }
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"hc — cylindrical contact homology of subcritical fillings from handle data"};
    app.require_subcommand(1);

    IndexArgs ia;
    auto* index = app.add_subcommand("index", "Crossing-number index of a symplectic block path");
    index->add_option("--rotation", ia.rotations, "rotation block with angular speed w");
    index->add_option("--hyperbolic", ia.hyperbolics, "hyperbolic block 'a,b'");
    index->add_option("--identity", ia.identities, "number of constant identity blocks");
    index->add_option("--T", ia.T, "path duration (simple period)")->required();
    index->add_option("--multiplicity", ia.multiplicity, "iterate count (default 1)");
    index->add_option("--format", ia.format, "human|csv|json");

    OrbitArgs oa;
    auto* orbits = app.add_subcommand("orbits", "Closed Reeb orbits of a model handle");
    orbits->add_option("document", oa.doc_path, "input JSON document")->required();
    orbits->add_option("--handle", oa.handle_id, "critical point id of the handle");
    orbits->add_option("--cutoff", oa.cutoff, "action cutoff, rational, units of pi");
    orbits->add_option("--format", oa.format, "human|csv|json");

    std::string hm_doc, hm_format = "human";
    auto* homology = app.add_subcommand("homology", "Betti numbers of the filling's Morse data");
    homology->add_option("document", hm_doc, "input JSON document")->required();
    homology->add_option("--format", hm_format, "human|csv|json");

    HcArgs ha;
    auto* hcc = app.add_subcommand("hc", "Cylindrical contact homology ranks");
    hcc->add_option("document", ha.doc_path, "input JSON document")->required();
    hcc->add_option("--target", ha.target, "M or Mprime");
    hcc->add_option("--route", ha.route, "chain, closed, or both");
    hcc->add_option("--window", ha.window, "degree window LO:HI");
    hcc->add_option("--m-o", ha.m_o, "multiplicity cutoff");
    hcc->add_option("--format", ha.format, "human|csv|json");

    WordArgs wa;
    auto* wordsc = app.add_subcommand("words", "Jumpy-word basin lemma verification");
    wordsc->add_option("--n", wa.n, "alphabet size / handle count")->required();
    wordsc->add_option("--mode", wa.mode, "exhaustive or sample (default by n)");
    wordsc->add_option("--samples", wa.samples, "sample count in sample mode");
    wordsc->add_option("--seed", wa.seed, "random seed");
    wordsc->add_option("--cap", wa.cap, "exhaustive budget cap");
    wordsc->add_flag("--serial", wa.serial, "use the serial reference scan");
    wordsc->add_option("--format", wa.format, "human|csv|json");

    std::string sh_doc, sh_window, sh_format = "human";
    auto* shift = app.add_subcommand("shift", "Degree-shift identity between M and M'");
    shift->add_option("document", sh_doc, "input JSON document")->required();
    shift->add_option("--window", sh_window, "degree window LO:HI");
    shift->add_option("--format", sh_format, "human|csv|json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*index) return cmd_index(ia, out);
        if (*orbits) return cmd_orbits(oa, out);
        if (*homology) return cmd_homology(hm_doc, hm_format, out, err);
        if (*hcc) return cmd_hc(ha, out, err);
        if (*wordsc) return cmd_words(wa, out);
        if (*shift) return cmd_shift(sh_doc, sh_window, sh_format, out, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateLevel& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const TheoremCheckFailure& e) {
        err << "error: " << e.what() << "\n";
        return 5;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return 6;
    } catch (const InvalidData& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace hc::cli
