#pragma once
#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

struct RunResult {
  int status;
  std::string out;
};

inline RunResult run_cmd(const std::string& cmd) {
  RunResult r{-1, ""};
  FILE* f = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!f) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), n);
  int st = pclose(f);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}
