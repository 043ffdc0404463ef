#pragma once

// Runs the hjcheck binary in a child process and captures its output.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hjtest {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

inline std::string config(const std::string& name) { return std::string(HJ_CONFIG_DIR) + "/" + name; }

inline CliResult run_cli(const std::string& args)
{
  static int counter = 0;
  const auto err_path =
      std::filesystem::temp_directory_path() / ("hjcheck_stderr_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  const std::string cmd = std::string(HJCHECK_PATH) + " " + args + " 2>" + err_path.string();
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe)
    throw std::runtime_error("cannot start " + cmd);
  CliResult r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), got);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream err(err_path);
  std::ostringstream ss;
  ss << err.rdbuf();
  r.err = ss.str();
  std::filesystem::remove(err_path);
  return r;
}

} // namespace hjtest
