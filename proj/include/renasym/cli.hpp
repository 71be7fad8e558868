#ifndef RENASYM_CLI_HPP
#define RENASYM_CLI_HPP

#include <map>
#include <string>
#include <vector>

namespace renasym::cli {

/// Flat sectioned key-value configuration. Values stay strings until a
/// command validates and converts them.
struct RunConfig {
  std::map<std::string, std::map<std::string, std::string>> sections;

  bool has(const std::string& sec, const std::string& key) const;
  std::string get(const std::string& sec, const std::string& key) const;
  std::string get_or(const std::string& sec, const std::string& key,
                     const std::string& fallback) const;
  double get_double(const std::string& sec, const std::string& key) const;
  double get_double_or(const std::string& sec, const std::string& key,
                       double fallback) const;
  int get_int_or(const std::string& sec, const std::string& key,
                 int fallback) const;
  std::vector<double> get_list(const std::string& sec,
                               const std::string& key) const;
  void set(const std::string& sec, const std::string& key,
           const std::string& value);
  /// Overlay other's entries onto this config.
  void merge(const RunConfig& other);
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical form: sorted sections and keys, numeric values rewritten to
/// their shortest round-trip representation. Idempotent.
std::string serialize_canonical(const RunConfig& cfg);

/// Named built-in configurations (theorem1, theorem2, gp, large-gradient,
/// planted-1.0, planted-1.5).
const std::map<std::string, std::string>& presets();

/// Default cache directory: RENASYM_CACHE_DIR when set, else ".".
std::string cache_dir();
/// Resolves a cache file name against cache_dir() unless absolute/existing.
std::string resolve_cache_path(const std::string& name);

int cmd_eval(const RunConfig& cfg, const std::string& out_path);
int cmd_residual(const RunConfig& cfg, const std::string& out_path);
int cmd_phi_cache(const RunConfig& cfg, const std::string& out_path);
int cmd_compare(const RunConfig& cfg, const std::string& out_path);

/// Full argument-vector entry point used by the binary.
int run_cli(int argc, char** argv);

}  // namespace renasym::cli

#endif
