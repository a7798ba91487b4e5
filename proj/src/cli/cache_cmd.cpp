#include <filesystem>
#include <iostream>

#include "astrid/cli.hpp"
#include "astrid/error.hpp"

namespace astrid::cli {

namespace fs = std::filesystem;

int cmd_cache(const std::string& action, const std::string& cache_dir) {
  if (cache_dir.empty()) throw ConfigError("cache needs --cache-dir");
  if (action == "stats") {
    if (!fs::is_directory(cache_dir)) {
      std::cout << "cache " << cache_dir << ": absent (0 entries)\n";
      return kExitOk;
    }
    std::size_t entries = 0;
    std::uintmax_t bytes = 0;
    for (const auto& item : fs::directory_iterator(cache_dir)) {
      if (!item.is_regular_file()) continue;
      ++entries;
      bytes += item.file_size();
    }
    std::cout << "cache " << cache_dir << ": " << entries << " entries, " << bytes
              << " bytes\n";
    return kExitOk;
  }
  if (action == "clear") {
    if (fs::is_directory(cache_dir)) {
      std::size_t removed = 0;
      for (const auto& item : fs::directory_iterator(cache_dir)) {
        if (item.is_regular_file()) {
          fs::remove(item.path());
          ++removed;
        }
      }
      std::cout << "cache " << cache_dir << ": removed " << removed << " entries\n";
    } else {
      std::cout << "cache " << cache_dir << ": absent, nothing to clear\n";
    }
    return kExitOk;
  }
  throw ConfigError("cache action must be stats or clear, got '" + action + "'");
}

}  // namespace astrid::cli
