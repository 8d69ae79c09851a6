// qacct: bookkeeping reports, Leontief solves and quantum demos from the
// command line. Exit codes: 0 success, 1 I/O or parse failure, 2 domain
// validation failure (including bad parameters).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qacct/qacct.hpp"

namespace fs = std::filesystem;
using qacct::io::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitDomain = 2;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return in;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

/// Writes to the file, or to stdout when the path is empty or "-".
void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    auto out = open_out(path);
    out << text;
}

qacct::Ledger load_ledger(const std::string& journal_path, const std::string& chart_path) {
    auto chart_in = open_in(chart_path);
    auto journal_in = open_in(journal_path);
    const qacct::Chart chart = qacct::io::read_chart(chart_in);
    const qacct::Journal journal = qacct::io::read_journal(journal_in);
    return qacct::post_journal(journal, qacct::Ledger(chart));
}

qacct::RealMatrix load_matrix(const std::string& path) {
    auto in = open_in(path);
    return qacct::io::read_matrix_csv(in);
}

std::vector<double> load_vector(const std::string& path) {
    auto in = open_in(path);
    return qacct::io::read_vector_csv(in);
}

// ---------------------------------------------------------------------------

struct PostArgs {
    std::string journal, chart, out;
};

int cmd_post(const PostArgs& a) {
    const qacct::Ledger ledger = load_ledger(a.journal, a.chart);
    const fs::path dir(a.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string());
    {
        auto out = open_out(dir / "ledger.json");
        out << qacct::io::ledger_json(ledger).dump(2) << '\n';
    }
    auto out = open_out(dir / "trial_balance.csv");
    qacct::io::write_trial_balance_csv(out, qacct::trial_balance(ledger));
    return kExitOk;
}

struct WorksheetArgs {
    std::string journal, chart, adjustments, action, out;
};

int cmd_worksheet(const WorksheetArgs& a) {
    const qacct::Ledger ledger = load_ledger(a.journal, a.chart);
    qacct::Journal adjustments;
    if (!a.adjustments.empty()) {
        auto in = open_in(a.adjustments);
        adjustments = qacct::io::read_journal(in);
    }
    const qacct::Worksheet w = qacct::build_worksheet(ledger, adjustments);
    std::ostringstream text;
    if (a.action.empty()) {
        qacct::io::write_worksheet_csv(text, w);
    } else {
        const qacct::BusinessAction action{load_matrix(a.action)};
        qacct::io::write_worksheet_csv(text, qacct::apply_business_action(action, w));
    }
    emit(a.out, text.str());
    return kExitOk;
}

struct SolveArgs {
    std::string matrix, demand, rhs, mode = "open", engine = "classical", out;
    std::uint64_t seed = 0;
    double tol = qacct::kDefaultPivotTol;
};

int cmd_leontief(const SolveArgs& a) {
    const qacct::IOMatrix io_matrix(load_matrix(a.matrix));
    if (a.mode == "open" && a.demand.empty())
        throw qacct::Error(qacct::ErrorCode::PreconditionViolated, "--mode open requires --demand");

    std::optional<qacct::QgjeReport> report;
    qacct::LeontiefSolution solution;
    if (a.engine == "quantum") {
        qacct::QuantumGje engine{{a.tol, a.seed, qacct::CountMode::OracleCalls}, std::nullopt};
        solution = a.mode == "closed" ? qacct::solve_closed(io_matrix, a.tol, engine)
                                      : qacct::solve_open(io_matrix, load_vector(a.demand), a.tol, engine);
        report = engine.last_report;
    } else {
        solution = a.mode == "closed" ? qacct::solve_closed(io_matrix, a.tol)
                                      : qacct::solve_open(io_matrix, load_vector(a.demand), a.tol);
    }
    emit(a.out, qacct::io::leontief_json(solution, report).dump(2) + "\n");
    return kExitOk;
}

int cmd_solve(const SolveArgs& a) {
    qacct::RealMatrix m = load_matrix(a.matrix);
    if (!a.rhs.empty()) m = qacct::augment(m, load_vector(a.rhs));
    if (m.cols() < 2) throw qacct::Error(qacct::ErrorCode::PreconditionViolated, "augmented matrix needs >= 2 columns");

    ordered_json j;
    if (a.engine == "quantum") {
        const auto report = qacct::quantum_gje(m, {a.tol, a.seed, qacct::CountMode::OracleCalls});
        j = qacct::io::qgje_report_json(report);
    } else {
        const auto result = qacct::classical_gje(m, a.tol);
        j["kind"] = qacct::kind_name(result.solution);
        j["x"] = qacct::io::solution_json(result.solution);
        if (const auto* u = std::get_if<qacct::Unique>(&result.solution)) {
            qacct::RealMatrix coeffs(m.rows(), m.cols() - 1);
            std::vector<double> b(m.rows());
            for (std::size_t i = 0; i < m.rows(); ++i) {
                for (std::size_t k = 0; k + 1 < m.cols(); ++k) coeffs(i, k) = m(i, k);
                b[i] = m(i, m.cols() - 1);
            }
            j["residual_inf"] = qacct::residual_inf(coeffs, u->x, b);
        }
    }
    emit(a.out, j.dump(2) + "\n");
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct DemoArgs {
    std::string kind;
    int n = 3;
    std::vector<std::uint64_t> marked;
    bool unknown_count = false;
    std::string f = "const0";
    std::uint64_t a = 0, b = 0;
    std::int64_t debit = 0, credit = 0;
    std::uint64_t seed = 0;
};

ordered_json demo_grover(const DemoArgs& a) {
    namespace q = qacct::quantum;
    if (a.n < 1 || a.n > q::kMaxQubits) throw qacct::Error(qacct::ErrorCode::OutOfRange, "--n must be in [1, 20]");
    const std::set<std::uint64_t> marked(a.marked.begin(), a.marked.end());
    if (marked.empty()) throw qacct::Error(qacct::ErrorCode::PreconditionViolated, "--marked is required");
    for (auto k : marked)
        if (k >= (std::uint64_t{1} << a.n))
            throw qacct::Error(qacct::ErrorCode::OutOfRange, "marked index " + std::to_string(k) + " >= 2^n");

    const q::BoolOracle oracle{a.n, [&marked](std::uint64_t x) { return marked.count(x) > 0; }};
    q::Rng rng(a.seed);
    q::OpCounter counter;
    std::optional<std::uint64_t> hint;
    if (!a.unknown_count) hint = marked.size();
    const std::uint64_t outcome = q::grover_search(oracle, hint, rng, counter);

    ordered_json j;
    j["outcome"] = outcome;
    j["oracle_calls"] = counter.oracle_calls;
    j["gate_applications"] = counter.gate_applications;
    if (hint)
        j["success_prob_theoretical"] =
            q::grover_success_probability(a.n, *hint, q::grover_optimal_iterations(a.n, *hint));
    else
        j["success_prob_theoretical"] = nullptr;
    return j;
}

ordered_json demo_deutsch(const DemoArgs& a) {
    namespace q = qacct::quantum;
    std::function<bool(std::uint64_t)> f;
    if (a.f == "const0") f = [](std::uint64_t) { return false; };
    else if (a.f == "const1") f = [](std::uint64_t) { return true; };
    else if (a.f == "identity") f = [](std::uint64_t x) { return x == 1; };
    else if (a.f == "negation") f = [](std::uint64_t x) { return x == 0; };
    else throw qacct::Error(qacct::ErrorCode::PreconditionViolated, "--f must be const0|const1|identity|negation");

    q::OpCounter counter;
    const auto cls = q::deutsch({1, f}, counter);
    ordered_json j;
    j["class"] = cls == q::DeutschClass::Constant ? "constant" : "balanced";
    j["oracle_calls"] = counter.oracle_calls;
    j["gate_applications"] = counter.gate_applications;
    return j;
}

ordered_json demo_qadd(const DemoArgs& a) {
    qacct::quantum::OpCounter counter;
    const auto sum = qacct::quantum::quantum_add(a.a, a.b, a.n, counter);
    ordered_json j;
    j["sum"] = sum;
    j["gate_applications"] = counter.gate_applications;
    return j;
}

ordered_json demo_bridge(const DemoArgs& a) {
    if (a.debit < 0 || a.credit < 0)
        throw qacct::Error(qacct::ErrorCode::NegativeAmount, "--debit and --credit must be >= 0");
    const qacct::TAccount account{"demo", qacct::AccountClass::Asset, qacct::Money(a.debit), qacct::Money(a.credit)};
    const auto via_cnot = qacct::bridge::balance_via_cnot(account);
    const auto classical = qacct::normal_balance(account);
    ordered_json j;
    j["normal_side"] = via_cnot.normal_side ? ordered_json(qacct::to_string(*via_cnot.normal_side)) : ordered_json(nullptr);
    j["normal_amount"] = via_cnot.normal_amount.minor();
    j["balanced_amount"] = via_cnot.balanced_amount.minor();
    j["agrees_with_normal_balance"] = via_cnot == classical;
    j["hadamard_factorization_error"] = qacct::bridge::hadamard_factorization().product_error();
    return j;
}

int cmd_demo(const DemoArgs& a) {
    ordered_json j;
    if (a.kind == "grover") j = demo_grover(a);
    else if (a.kind == "deutsch") j = demo_deutsch(a);
    else if (a.kind == "qadd") j = demo_qadd(a);
    else j = demo_bridge(a);
    std::cout << j.dump() << '\n';
    return kExitOk;
}

int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const qacct::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == qacct::ErrorCode::ParseError ? kExitIo : kExitDomain;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qacct: linear-algebra bookkeeping, Leontief models and quantum Gauss-Jordan elimination"};
    app.require_subcommand(1);

    PostArgs post;
    auto* post_cmd = app.add_subcommand("post", "Post a journal; write ledger.json and trial_balance.csv");
    post_cmd->add_option("--journal", post.journal, "JSON-lines journal")->required();
    post_cmd->add_option("--chart", post.chart, "chart of accounts (JSON)")->required();
    post_cmd->add_option("--out", post.out, "output directory")->required();

    WorksheetArgs ws;
    auto* ws_cmd = app.add_subcommand("worksheet", "Build the five-column-pair worksheet as CSV");
    ws_cmd->add_option("--journal", ws.journal, "JSON-lines journal")->required();
    ws_cmd->add_option("--chart", ws.chart, "chart of accounts (JSON)")->required();
    ws_cmd->add_option("--adjustments", ws.adjustments, "JSON-lines adjusting entries");
    ws_cmd->add_option("--action", ws.action, "business-action matrix (CSV) applied to the worksheet vector");
    ws_cmd->add_option("--out", ws.out, "output CSV (stdout when omitted)");

    SolveArgs leo;
    auto* leo_cmd = app.add_subcommand("leontief", "Solve a closed or open Leontief model");
    leo_cmd->add_option("--matrix", leo.matrix, "input-output matrix (CSV)")->required();
    leo_cmd->add_option("--mode", leo.mode, "closed|open")->check(CLI::IsMember({"closed", "open"}));
    leo_cmd->add_option("--demand", leo.demand, "demand vector (CSV, one line)");
    leo_cmd->add_option("--engine", leo.engine, "classical|quantum")->check(CLI::IsMember({"classical", "quantum"}));
    leo_cmd->add_option("--seed", leo.seed, "RNG seed for the quantum engine");
    leo_cmd->add_option("--tol", leo.tol, "pivot tolerance")->check(CLI::PositiveNumber);
    leo_cmd->add_option("--out", leo.out, "output JSON (stdout when omitted)");

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Solve Ax = b by Gauss-Jordan elimination");
    solve_cmd->add_option("--matrix", solve.matrix, "A (CSV), or [A|b] when --rhs is omitted")->required();
    solve_cmd->add_option("--rhs", solve.rhs, "b (CSV, one line)");
    solve_cmd->add_option("--engine", solve.engine, "classical|quantum")->check(CLI::IsMember({"classical", "quantum"}));
    solve_cmd->add_option("--seed", solve.seed, "RNG seed for the quantum engine");
    solve_cmd->add_option("--tol", solve.tol, "pivot tolerance")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--out", solve.out, "output JSON (stdout when omitted)");

    DemoArgs demo;
    auto* demo_cmd = app.add_subcommand("demo", "Run a simulator demo and print a JSON report");
    demo_cmd->add_option("kind", demo.kind, "grover|deutsch|qadd|bridge")
        ->required()
        ->check(CLI::IsMember({"grover", "deutsch", "qadd", "bridge"}));
    demo_cmd->add_option("--n", demo.n, "qubit count (grover) or adder width (qadd)");
    demo_cmd->add_option("--marked", demo.marked, "marked indices (grover)");
    demo_cmd->add_flag("--unknown-count", demo.unknown_count, "grover without a marked-count hint");
    demo_cmd->add_option("--f", demo.f, "const0|const1|identity|negation (deutsch)");
    demo_cmd->add_option("--a", demo.a, "first addend (qadd)");
    demo_cmd->add_option("--b", demo.b, "second addend (qadd)");
    demo_cmd->add_option("--debit", demo.debit, "debit minor units (bridge)");
    demo_cmd->add_option("--credit", demo.credit, "credit minor units (bridge)");
    demo_cmd->add_option("--seed", demo.seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitDomain;
    }

    if (post_cmd->parsed()) return run_guarded([&] { return cmd_post(post); });
    if (ws_cmd->parsed()) return run_guarded([&] { return cmd_worksheet(ws); });
    if (leo_cmd->parsed()) return run_guarded([&] { return cmd_leontief(leo); });
    if (solve_cmd->parsed()) return run_guarded([&] { return cmd_solve(solve); });
    return run_guarded([&] { return cmd_demo(demo); });
}
