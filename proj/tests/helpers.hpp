#pragma once
// Shared test plumbing: repo-root lookup and temp-file helper.

#include <cstdlib>
#include <fstream>
#include <string>

inline std::string repo_root() {
  const char* r = std::getenv("SENLOG_ROOT");
  return r ? std::string(r) : std::string(".");
}

inline std::string fixture(const std::string& rel) { return repo_root() + "/fixtures/" + rel; }

inline std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/" + name;
  std::ofstream out(path);
  out << content;
  return path;
}
