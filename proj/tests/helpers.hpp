#pragma once

#include <cstdio>
#include <memory>
#include <random>
#include <string>
#include <sys/wait.h>
#include <utility>

#include "galmann/expr.hpp"

namespace test_helpers {

// ---------------------------------------------------------------------------
// Random parser-shaped expression trees (no negative literals; the parser
// produces those as negate nodes).
// ---------------------------------------------------------------------------

inline std::shared_ptr<const galmann::ExprNode> make_node(galmann::ExprNode n) {
    return std::make_shared<const galmann::ExprNode>(std::move(n));
}

inline std::shared_ptr<const galmann::ExprNode> random_node(std::mt19937& rng, int depth) {
    using galmann::ExprNode;
    using galmann::FuncId;
    using galmann::NodeKind;

    const auto uniform = [&rng](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 5) * 0x1.0p-27);
    };
    const auto pick = [&rng](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };

    if (depth <= 0 || pick(4) == 0) {
        if (pick(2) == 0)
            return make_node({NodeKind::variable, 0.0, FuncId::sin, nullptr, nullptr, 0, 0});
        return make_node({NodeKind::number, uniform(0.0, 2.5), FuncId::sin, nullptr, nullptr, 0, 0});
    }

    switch (pick(7)) {
        case 0:
            return make_node({NodeKind::negate, 0.0, FuncId::sin, random_node(rng, depth - 1), nullptr, 0, 0});
        case 1:
            return make_node({NodeKind::add, 0.0, FuncId::sin, random_node(rng, depth - 1),
                              random_node(rng, depth - 1), 0, 0});
        case 2:
            return make_node({NodeKind::subtract, 0.0, FuncId::sin, random_node(rng, depth - 1),
                              random_node(rng, depth - 1), 0, 0});
        case 3:
            return make_node({NodeKind::multiply, 0.0, FuncId::sin, random_node(rng, depth - 1),
                              random_node(rng, depth - 1), 0, 0});
        case 4:
            return make_node({NodeKind::divide, 0.0, FuncId::sin, random_node(rng, depth - 1),
                              random_node(rng, depth - 1), 0, 0});
        case 5: {
            // Mostly small constant exponents, occasionally a subtree.
            std::shared_ptr<const galmann::ExprNode> expo;
            if (pick(5) == 0) {
                expo = random_node(rng, depth - 2);
            } else {
                const double choices[] = {0.0, 1.0, 2.0, 3.0, 4.0, 0.5, 1.5, 2.5};
                expo = make_node(
                    {NodeKind::number, choices[pick(8)], FuncId::sin, nullptr, nullptr, 0, 0});
            }
            return make_node({NodeKind::power, 0.0, FuncId::sin, random_node(rng, depth - 1), expo, 0, 0});
        }
        default: {
            const auto func = static_cast<FuncId>(pick(10));
            return make_node({NodeKind::call, 0.0, func, random_node(rng, depth - 1), nullptr, 0, 0});
        }
    }
}

inline galmann::Expression random_expression(std::mt19937& rng, int depth,
                                             const std::string& variable = "t") {
    auto root = random_node(rng, depth);
    galmann::Expression shell(root, {}, variable);
    return galmann::Expression(root, shell.print(), variable);
}

// ---------------------------------------------------------------------------
// CLI driver (targets that define GALMANN_CLI_PATH only)
// ---------------------------------------------------------------------------

#ifdef GALMANN_CLI_PATH

struct CliResult {
    int exit_code = -1;
    std::string out;
};

// Runs the CLI through the shell, capturing stdout. `prefix` may carry
// environment assignments ("VAR=... ").
inline CliResult run_cli(const std::string& args, const std::string& prefix = {}) {
    const std::string command = prefix + GALMANN_CLI_PATH + " " + args + " 2>/dev/null";
    CliResult result;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return result;
    char buffer[4096];
    std::size_t got = 0;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

#endif  // GALMANN_CLI_PATH

}  // namespace test_helpers
