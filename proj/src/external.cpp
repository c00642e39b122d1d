// Copyright 2026 The stackdet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stackdet/external.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "stackdet/error.hpp"

extern char** environ;

namespace stackdet {
namespace {

class Fd {
 public:
  explicit Fd(int fd = -1) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  Fd(Fd&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
  ~Fd() { Close(); }
  void Reset(int fd) {
    Close();
    fd_ = fd;
  }
  int get() const { return fd_; }
  void Close() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_;
};

struct Pipe {
  Fd read, write;
};

Pipe MakePipe() {
  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) {
    throw AdapterProtocolError(std::string("pipe: ") + std::strerror(errno));
  }
  Pipe p;
  p.read.Reset(fds[0]);
  p.write.Reset(fds[1]);
  return p;
}

// Writes `input` to the child and collects its stdout, interleaving the two
// so neither side can block on a full pipe.
std::string Exchange(Fd& to_child, Fd& from_child,
                     const std::string& input) {
  ::fcntl(to_child.get(), F_SETFL, O_NONBLOCK);
  std::string output;
  std::size_t written = 0;
  if (input.empty()) to_child.Close();
  char buf[65536];
  while (from_child.get() >= 0) {
    pollfd fds[2];
    int nfds = 0;
    fds[nfds++] = {from_child.get(), POLLIN, 0};
    if (to_child.get() >= 0) fds[nfds++] = {to_child.get(), POLLOUT, 0};
    if (::poll(fds, nfds, -1) < 0) {
      if (errno == EINTR) continue;
      throw AdapterProtocolError(std::string("poll: ") + std::strerror(errno));
    }
    if (nfds == 2 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
      const ssize_t n = ::write(to_child.get(), input.data() + written,
                                input.size() - written);
      if (n > 0) written += static_cast<std::size_t>(n);
      if (n < 0 && errno != EAGAIN && errno != EINTR) {
        // Child closed stdin early (EPIPE); let the exit status speak.
        to_child.Close();
      } else if (written == input.size()) {
        to_child.Close();
      }
    }
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      const ssize_t n = ::read(from_child.get(), buf, sizeof(buf));
      if (n > 0) {
        output.append(buf, static_cast<std::size_t>(n));
      } else if (n == 0 || (errno != EAGAIN && errno != EINTR)) {
        from_child.Close();
      }
    }
  }
  to_child.Close();
  return output;
}

}  // namespace

ExternalDetector::ExternalDetector(std::vector<std::string> argv)
    : argv_(std::move(argv)) {
  if (argv_.empty() || argv_.front().empty()) {
    throw InvalidConfig("external detector command is empty");
  }
}

std::vector<std::string> ExternalDetector::SplitCommand(
    const std::string& command) {
  std::istringstream in(command);
  std::vector<std::string> argv;
  for (std::string part; in >> part;) argv.push_back(part);
  return argv;
}

std::vector<DetectorScore> ExternalDetector::ScoreBatch(
    std::span<const std::string_view> texts) const {
  if (texts.empty()) return {};
  std::string input;
  for (auto t : texts) {
    input += nlohmann::json(std::string(t)).dump();
    input.push_back('\n');
  }

  // A child that exits before draining stdin must not kill us.
  ::signal(SIGPIPE, SIG_IGN);

  Pipe in = MakePipe();
  Pipe out = MakePipe();
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, in.read.get(), STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, out.write.get(), STDOUT_FILENO);

  std::vector<char*> args;
  for (const auto& a : argv_) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);

  pid_t pid = 0;
  const int rc = ::posix_spawnp(&pid, args[0], &actions, nullptr, args.data(),
                                environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) {
    throw AdapterProtocolError("cannot start '" + argv_.front() +
                               "': " + std::strerror(rc));
  }
  in.read.Close();
  out.write.Close();

  const std::string output = Exchange(in.write, out.read, input);

  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    throw AdapterProtocolError(
        "adapter '" + argv_.front() + "' exited abnormally (status " +
        std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1) + ")");
  }

  std::vector<DetectorScore> scores;
  std::vector<std::string> warnings;
  std::istringstream lines(output);
  std::size_t line_no = 0;
  for (std::string line; std::getline(lines, line);) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t')) {
      line.pop_back();
    }
    const char* begin = line.c_str();
    while (*begin == ' ' || *begin == '\t') ++begin;
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (*begin == '\0' || end == begin || *end != '\0' || !std::isfinite(v)) {
      throw AdapterProtocolError("adapter line " + std::to_string(line_no) +
                                 ": malformed score '" + line + "'");
    }
    double clamped = v;
    if (v < 0.0 || v > 1.0) {
      clamped = v < 0.0 ? 0.0 : 1.0;
      warnings.push_back("adapter line " + std::to_string(line_no) +
                         ": score " + line + " clamped to " +
                         (clamped == 0.0 ? "0" : "1"));
    }
    scores.push_back({clamped, LogitOf(clamped)});
  }
  if (scores.size() != texts.size()) {
    throw AdapterProtocolError(
        "adapter returned " + std::to_string(scores.size()) +
        " scores for " + std::to_string(texts.size()) + " texts");
  }
  if (!warnings.empty()) {
    std::lock_guard<std::mutex> lock(warnings_mu_);
    warnings_.insert(warnings_.end(), warnings.begin(), warnings.end());
  }
  return scores;
}

std::vector<std::string> ExternalDetector::TakeWarnings() const {
  std::lock_guard<std::mutex> lock(warnings_mu_);
  return std::exchange(warnings_, {});
}

}  // namespace stackdet
