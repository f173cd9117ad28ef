#include "tempnet/session_ingest.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "csv_util.hpp"
#include "tempnet/errors.hpp"

namespace tempnet {
namespace {

constexpr std::string_view kHeader = "user,ap,t_connect,t_disconnect";

std::string read_gzip(const std::filesystem::path& path) {
  gzFile file = gzopen(path.c_str(), "rb");
  if (file == nullptr) {
    throw InputError("cannot open " + path.string());
  }
  std::string data;
  std::array<char, 1 << 16> buffer{};
  int n = 0;
  while ((n = gzread(file, buffer.data(), static_cast<unsigned>(buffer.size()))) > 0) {
    data.append(buffer.data(), static_cast<std::size_t>(n));
  }
  const bool failed = n < 0;
  gzclose(file);
  if (failed) {
    throw InputError("corrupt gzip stream in " + path.string());
  }
  return data;
}

std::optional<std::string> parse_row(std::string_view line, Session& out) {
  const auto fields = detail::split(line, ',');
  if (fields.size() != 4) {
    return "expected 4 fields, got " + std::to_string(fields.size());
  }
  const auto user = detail::strip(fields[0]);
  const auto ap = detail::strip(fields[1]);
  if (user.empty()) return std::string("empty user");
  if (ap.empty()) return std::string("empty ap");
  const auto t_connect = detail::parse_int<Timestamp>(fields[2]);
  if (!t_connect) return std::string("bad t_connect");
  const auto t_disconnect = detail::parse_int<Timestamp>(fields[3]);
  if (!t_disconnect) return std::string("bad t_disconnect");
  if (*t_disconnect <= *t_connect) return std::string("non-positive duration");
  out = Session{std::string(user), std::string(ap), *t_connect, *t_disconnect};
  return std::nullopt;
}

}  // namespace

bool session_less(const Session& a, const Session& b) noexcept {
  return std::tie(a.t_connect, a.user, a.ap, a.t_disconnect) <
         std::tie(b.t_connect, b.user, b.ap, b.t_disconnect);
}

LogFormat detect_format(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot open " + path.string());
  }
  unsigned char magic[2] = {0, 0};
  in.read(reinterpret_cast<char*>(magic), 2);
  if (in.gcount() == 2 && magic[0] == 0x1f && magic[1] == 0x8b) {
    return LogFormat::csv_gzip;
  }
  return LogFormat::csv;
}

ParseResult parse_sessions(std::istream& source, int tz_offset_minutes) {
  if (!source) {
    throw InputError("unreadable session source");
  }
  ParseResult result;
  result.sessions.tz_offset_minutes = tz_offset_minutes;

  std::string raw;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (std::getline(source, raw)) {
    ++line_no;
    const auto line = detail::trim_line_end(raw);
    if (detail::is_skippable(line)) continue;
    if (!seen_header) {
      if (detail::strip(line) != kHeader) {
        throw InputError("line " + std::to_string(line_no) + ": expected header '" +
                         std::string(kHeader) + "'");
      }
      seen_header = true;
      continue;
    }
    Session s;
    if (auto reason = parse_row(line, s)) {
      result.rejects.push_back({line_no, std::move(*reason)});
    } else {
      result.sessions.sessions.push_back(std::move(s));
    }
  }
  if (source.bad()) {
    throw InputError("read error after line " + std::to_string(line_no));
  }
  if (!seen_header) {
    throw InputError("missing header '" + std::string(kHeader) + "'");
  }
  std::sort(result.sessions.sessions.begin(), result.sessions.sessions.end(), session_less);
  return result;
}

ParseResult read_sessions(const std::filesystem::path& path, int tz_offset_minutes,
                          std::optional<LogFormat> format) {
  const LogFormat fmt = format.value_or(detect_format(path));
  if (fmt == LogFormat::csv_gzip) {
    std::istringstream in(read_gzip(path));
    return parse_sessions(in, tz_offset_minutes);
  }
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open " + path.string());
  }
  return parse_sessions(in, tz_offset_minutes);
}

SessionSet clean_sessions(SessionSet raw) {
  std::map<std::string_view, std::vector<Session*>> by_user;
  for (auto& s : raw.sessions) by_user[s.user].push_back(&s);

  for (auto& [user, list] : by_user) {
    std::sort(list.begin(), list.end(), [](const Session* a, const Session* b) {
      return std::tie(a->t_connect, a->t_disconnect, a->ap) <
             std::tie(b->t_connect, b->t_disconnect, b->ap);
    });
    for (std::size_t i = 0; i + 1 < list.size(); ++i) {
      list[i]->t_disconnect = std::min(list[i]->t_disconnect, list[i + 1]->t_connect);
    }
  }

  SessionSet out;
  out.tz_offset_minutes = raw.tz_offset_minutes;
  out.sessions.reserve(raw.sessions.size());
  for (auto& s : raw.sessions) {
    if (s.t_connect < s.t_disconnect) out.sessions.push_back(std::move(s));
  }
  std::sort(out.sessions.begin(), out.sessions.end(), session_less);
  return out;
}

bool sessions_disjoint_per_user(const SessionSet& set) {
  std::map<std::string_view, std::vector<std::pair<Timestamp, Timestamp>>> by_user;
  for (const auto& s : set.sessions) by_user[s.user].emplace_back(s.t_connect, s.t_disconnect);
  for (auto& [user, spans] : by_user) {
    std::sort(spans.begin(), spans.end());
    for (std::size_t i = 0; i + 1 < spans.size(); ++i) {
      if (spans[i].second > spans[i + 1].first) return false;
    }
  }
  return true;
}

void write_sessions_csv(std::ostream& out, const SessionSet& set) {
  out << kHeader << '\n';
  for (const auto& s : set.sessions) {
    out << s.user << ',' << s.ap << ',' << s.t_connect << ',' << s.t_disconnect << '\n';
  }
}

void write_rejects_csv(std::ostream& out, std::span<const RejectedRow> rejects) {
  out << "line,reason\n";
  for (const auto& r : rejects) out << r.line << ',' << r.reason << '\n';
}

}  // namespace tempnet
