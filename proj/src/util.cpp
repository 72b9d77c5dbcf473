#include "hlsforge/util.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <sys/wait.h>
#include <unistd.h>

namespace hlsforge {

namespace {

using u128 = unsigned __int128;

constexpr u128 make_u128(std::uint64_t hi, std::uint64_t lo) {
  return (static_cast<u128>(hi) << 64) | lo;
}

// FNV-1a 128-bit constants.
constexpr u128 kFnvOffset = make_u128(0x6c62272e07bb0142ULL, 0x62b821756295c58dULL);
constexpr u128 kFnvPrime = make_u128(0x0000000001000000ULL, 0x000000000000013bULL);

void fnv_absorb(u128& h, std::string_view data) {
  for (unsigned char c : data) {
    h ^= c;
    h *= kFnvPrime;
  }
}

std::string hex128(u128 v) {
  static const char* digits = "0123456789abcdef";
  std::string out(32, '0');
  for (int i = 31; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[static_cast<unsigned>(v & 0xf)];
    v >>= 4;
  }
  return out;
}

}  // namespace

std::string content_hash(std::string_view data) {
  u128 h = kFnvOffset;
  fnv_absorb(h, data);
  return hex128(h);
}

std::string content_hash(const std::vector<std::string>& parts) {
  u128 h = kFnvOffset;
  for (const auto& p : parts) {
    // Length-prefix each part so ("ab","c") and ("a","bc") differ.
    fnv_absorb(h, std::to_string(p.size()));
    fnv_absorb(h, "\x1f");
    fnv_absorb(h, p);
  }
  return hex128(h);
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string fmt_double(double v, int precision) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*f", precision, v);
  return std::string(buf.data());
}

std::string read_text_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InfraError("cannot open file: " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& p, std::string_view text) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw InfraError("cannot write file: " + p.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InfraError("short write: " + p.string());
}

CommandResult run_command(const std::string& command, double timeout_s,
                          const std::optional<std::filesystem::path>& cwd) {
  CommandResult res;
  // coreutils `timeout` handles the wall clock; exit 124 marks expiry.
  std::ostringstream full;
  full << "timeout " << fmt_double(timeout_s, 3) << "s ";
  if (cwd) full << "sh -c 'cd " << cwd->string() << " && " << command << "' ";
  else full << "sh -c '" << command << "' ";
  full << "2>&1";

  FILE* pipe = popen(full.str().c_str(), "r");
  if (!pipe) {
    res.spawn_failed = true;
    return res;
  }
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    res.output.append(buf.data(), n);
  }
  int status = pclose(pipe);
  if (status == -1) {
    res.spawn_failed = true;
    return res;
  }
  if (WIFEXITED(status)) {
    res.exit_code = WEXITSTATUS(status);
    if (res.exit_code == 124) res.timed_out = true;
    // 127 = shell could not find the binary.
    if (res.exit_code == 127) res.spawn_failed = true;
  } else {
    res.exit_code = -1;
  }
  return res;
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  if (jobs <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace hlsforge
