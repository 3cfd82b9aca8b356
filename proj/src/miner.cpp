#include "changectx/miner.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace changectx {

namespace {

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "'\\''";
        else out.push_back(c);
    }
    out.push_back('\'');
    return out;
}

struct ExecResult {
    bool ok = false;
    std::string output;
};

ExecResult run(const std::string& cmd) {
    ExecResult res;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!pipe) return res;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.output.append(buf, n);
    res.ok = pclose(pipe) == 0;
    return res;
}

std::string git(const std::string& repo, const std::string& args) {
    return "git -C " + shell_quote(repo) + " " + args;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

bool is_java(const std::string& path) {
    return path.size() > 5 && path.compare(path.size() - 5, 5, ".java") == 0;
}

}  // namespace

std::string repo_name(const std::string& repo_path) {
    std::string p = repo_path;
    while (!p.empty() && (p.back() == '/' || p.back() == '\\')) p.pop_back();
    size_t slash = p.find_last_of("/\\");
    return slash == std::string::npos ? p : p.substr(slash + 1);
}

std::vector<std::string> read_repo_list(const std::string& path, std::string* error) {
    std::vector<std::string> repos;
    std::ifstream in(path);
    if (!in) {
        if (error) *error = "cannot open repo list: " + path;
        return repos;
    }
    std::string line;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        size_t b = line.find_last_not_of(" \t\r");
        repos.push_back(line.substr(a, b - a + 1));
    }
    return repos;
}

std::optional<std::vector<RawCommit>> mine_repo(const std::string& repo_path,
                                                Diagnostics* diags) {
    if (!run(git(repo_path, "rev-parse --git-dir")).ok) {
        diag(diags, "not a repository: " + repo_path);
        return std::nullopt;
    }
    std::vector<RawCommit> commits;
    if (!run(git(repo_path, "rev-parse HEAD")).ok) return commits;  // no commits yet

    ExecResult list = run(git(repo_path, "rev-list --reverse --no-merges HEAD"));
    if (!list.ok) {
        diag(diags, "rev-list failed: " + repo_path);
        return commits;
    }
    for (const std::string& sha : split_lines(list.output)) {
        ExecResult status =
            run(git(repo_path, "diff-tree --no-renames --root -r --name-status " + sha));
        if (!status.ok) {
            diag(diags, "unreadable commit skipped: " + sha);
            continue;
        }
        RawCommit commit;
        commit.id = sha;
        bool unreadable = false;
        for (const std::string& line : split_lines(status.output)) {
            size_t tab = line.find('\t');
            if (tab == std::string::npos) continue;  // the --root header line
            std::string st = line.substr(0, tab);
            std::string path = line.substr(tab + 1);
            if (!is_java(path)) continue;
            FileChange fc;
            fc.path = path;
            if (st != "A") {
                ExecResult before = run(git(repo_path, "show " + sha + "^:" + shell_quote(path)));
                if (!before.ok) {
                    unreadable = true;
                    break;
                }
                fc.before = before.output;
            }
            if (st != "D") {
                ExecResult after = run(git(repo_path, "show " + sha + ":" + shell_quote(path)));
                if (!after.ok) {
                    unreadable = true;
                    break;
                }
                fc.after = after.output;
            }
            commit.files.push_back(std::move(fc));
        }
        if (unreadable) {
            diag(diags, "unreadable commit skipped: " + sha);
            continue;
        }
        if (commit.files.empty()) continue;  // no Java changes
        ExecResult msg = run(git(repo_path, "log --format=%B -n 1 " + sha));
        if (!msg.ok) {
            diag(diags, "unreadable commit skipped: " + sha);
            continue;
        }
        commit.message = msg.output;
        while (!commit.message.empty() &&
               (commit.message.back() == '\n' || commit.message.back() == '\r'))
            commit.message.pop_back();
        commits.push_back(std::move(commit));
    }
    return commits;
}

}  // namespace changectx
