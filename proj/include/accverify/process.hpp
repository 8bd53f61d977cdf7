// Shell command execution with stream capture and a hard timeout that
// kills the whole process group. POSIX only.
#pragma once

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstring>
#include <map>
#include <string>
#include <string_view>
#include <vector>

extern char** environ;

namespace accv::proc {

struct CommandResult {
  int exit_code = 0;       // 128+signal when terminated by a signal
  bool timed_out = false;
  bool spawn_failed = false;
  std::string out;
  std::string err;
  long long duration_ms = 0;
};

// Runs `command` through /bin/sh -c in its own process group, with
// `extra_env` exported. On timeout the group gets SIGKILL.
//
// Workers call this concurrently, so everything between fork and exec
// must stay async-signal-safe: the environment block is assembled before
// forking and the child only calls dup2/close/execve/_exit.
inline CommandResult run_shell(const std::string& command, int timeout_seconds,
                               const std::map<std::string, std::string>& extra_env = {}) {
  CommandResult result;
  auto start = std::chrono::steady_clock::now();

  std::vector<std::string> env_strings;
  for (char** e = environ; e && *e; ++e) {
    std::string_view entry = *e;
    std::string key(entry.substr(0, entry.find('=')));
    if (!extra_env.count(key)) env_strings.emplace_back(entry);
  }
  for (const auto& [key, value] : extra_env) env_strings.push_back(key + "=" + value);
  std::vector<char*> envp;
  for (auto& s : env_strings) envp.push_back(s.data());
  envp.push_back(nullptr);
  const char* argv[] = {"sh", "-c", command.c_str(), nullptr};

  int out_pipe[2], err_pipe[2];
  if (pipe(out_pipe) != 0 || pipe(err_pipe) != 0) {
    result.spawn_failed = true;
    result.exit_code = -1;
    result.err = "pipe() failed";
    return result;
  }

  pid_t pid = fork();
  if (pid < 0) {
    result.spawn_failed = true;
    result.exit_code = -1;
    result.err = "fork() failed";
    for (int fd : {out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1]}) close(fd);
    return result;
  }

  if (pid == 0) {
    setpgid(0, 0);
    dup2(out_pipe[1], STDOUT_FILENO);
    dup2(err_pipe[1], STDERR_FILENO);
    for (int fd : {out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1]}) close(fd);
    execve("/bin/sh", const_cast<char**>(argv), envp.data());
    _exit(127);
  }

  setpgid(pid, pid);  // also from the parent side to avoid the startup race
  close(out_pipe[1]);
  close(err_pipe[1]);

  auto deadline = start + std::chrono::seconds(timeout_seconds);
  struct pollfd fds[2] = {{out_pipe[0], POLLIN, 0}, {err_pipe[0], POLLIN, 0}};
  bool open_fd[2] = {true, true};
  std::string* sinks[2] = {&result.out, &result.err};
  char buf[4096];
  bool child_done = false;
  int status = 0;
  std::chrono::steady_clock::time_point reaped_at;

  while (true) {
    if (open_fd[0] || open_fd[1]) {
      int n = poll(fds, 2, 20);
      if (n > 0) {
        for (int i = 0; i < 2; ++i) {
          if (!open_fd[i]) continue;
          if (fds[i].revents & (POLLIN | POLLHUP)) {
            ssize_t got = read(fds[i].fd, buf, sizeof buf);
            if (got > 0) {
              sinks[i]->append(buf, static_cast<size_t>(got));
              continue;
            }
            if (got == 0 || (got < 0 && errno != EAGAIN && errno != EINTR)) {
              close(fds[i].fd);
              open_fd[i] = false;
              fds[i].fd = -1;
            }
          }
        }
      }
    } else {
      usleep(2000);  // pipes drained, child still running
    }

    auto now = std::chrono::steady_clock::now();
    if (!child_done) {
      pid_t w = waitpid(pid, &status, WNOHANG);
      if (w == pid) {
        child_done = true;
        reaped_at = now;
      } else if (!result.timed_out && now >= deadline) {
        // Only an unreaped child counts as a timeout; a starved parent
        // must not blame a child that already finished.
        kill(-pid, SIGKILL);
        result.timed_out = true;
      }
    }
    if (child_done) {
      if (!open_fd[0] && !open_fd[1]) break;
      // Grandchildren may hold the pipes open past the child's exit; give
      // them a short drain window, then stop.
      if (now - reaped_at > std::chrono::milliseconds(250)) {
        if (open_fd[0]) close(fds[0].fd);
        if (open_fd[1]) close(fds[1].fd);
        break;
      }
    }
  }

  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  else if (WIFSIGNALED(status)) result.exit_code = 128 + WTERMSIG(status);

  result.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  return result;
}

}  // namespace accv::proc
