#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace funcon::cli {

enum class Mode { Funcon, Imp, Simple };

struct RunConfig {
    std::string input;
    std::optional<Mode> mode;  // inferred from the extension when absent
    bool emit_funcons = false;
    bool trace = false;
    std::uint64_t max_steps = 1'000'000;
    std::uint64_t seed = 0;
    std::optional<std::string> stdin_file;
};

// Exit codes: 0 normal, 1 abrupted, 2 stuck, 3 diverged, 4 parse or
// translation error, 64 usage error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Full command line (excluding argv[0]); prints usage on bad flags.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace funcon::cli
