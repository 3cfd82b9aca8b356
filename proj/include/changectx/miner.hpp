#pragma once

#include <optional>
#include <string>
#include <vector>

#include "changectx/corpus.hpp"
#include "changectx/stmt_parser.hpp"

namespace changectx {

/// One non-merge commit as mined from a repository: message plus full
/// before/after texts of every touched .java file.
struct RawCommit {
    std::string id;
    std::string message;
    std::vector<FileChange> files;
};

/// Walks a local clone oldest-first and yields every non-merge commit that
/// touches at least one .java file. Unreadable commits are skipped with a
/// diagnostic. Returns nullopt when `repo_path` is not a repository.
std::optional<std::vector<RawCommit>> mine_repo(const std::string& repo_path,
                                                Diagnostics* diags = nullptr);

/// Repo list file: one local path per line, `#` comments and blanks
/// ignored.
std::vector<std::string> read_repo_list(const std::string& path, std::string* error = nullptr);

/// Last path component, used as the repo display name.
std::string repo_name(const std::string& repo_path);

}  // namespace changectx
