#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tileterm/termination.hpp"
#include "tileterm/workspace.hpp"

namespace tileterm {

struct AnalysisRecord {
    std::string system;
    TileConfig cfg;
    Analysis analysis;
    std::vector<std::string> remaining;
    bool terminating = false;
};

struct CommandResult {
    std::string output;
    bool exit = false;
    bool error = false;  // unknown command or bad arguments
};

// Parses the arguments of `use`: triples "i w c". Throws std::invalid_argument.
TileConfig parse_use_arguments(const std::vector<std::string>& args, const Workspace& ws);

class Shell {
public:
    explicit Shell(Workspace ws);

    CommandResult execute(const std::string& line);

    std::string banner() const;
    static std::string prompt() { return "tileterm> "; }

    bool in_proof_mode() const { return proof_.has_value(); }
    const ProofState* proof() const { return proof_ ? &*proof_ : nullptr; }
    const Workspace& workspace() const { return ws_; }
    const std::vector<AnalysisRecord>& history() const { return history_; }

private:
    CommandResult selection_command(const std::string& cmd, const std::vector<std::string>& args);
    CommandResult proof_command(const std::string& cmd, const std::vector<std::string>& args);
    CommandResult use(const std::vector<std::string>& args);

    Workspace ws_;
    std::optional<ProofState> proof_;
    std::size_t proof_system_ = 0;
    std::vector<AnalysisRecord> history_;
};

// Interactive loop; returns the process exit code.
int run_repl(Shell& shell, std::istream& in, std::ostream& out);

// Replays a script of shell commands plus `expect terminating` and
// `expect status RULE STATUS`. Returns 0 on success, 1 when an expectation
// fails, 2 on a script error.
int run_batch(const Workspace& ws, const std::filesystem::path& script, bool json,
              std::ostream& out, std::ostream& err);

}  // namespace tileterm
