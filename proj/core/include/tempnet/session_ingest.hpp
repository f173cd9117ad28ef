#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tempnet/types.hpp"

namespace tempnet {

/// One device's contiguous attachment to one access point.
/// Invariant: t_connect < t_disconnect.
struct Session {
  UserId user;
  ApId ap;
  Timestamp t_connect = 0;
  Timestamp t_disconnect = 0;

  [[nodiscard]] Timestamp duration() const noexcept { return t_disconnect - t_connect; }

  friend bool operator==(const Session&, const Session&) = default;
};

/// Ordering used throughout: (t_connect, user, ap, t_disconnect).
bool session_less(const Session& a, const Session& b) noexcept;

struct SessionSet {
  std::vector<Session> sessions;
  int tz_offset_minutes = kDefaultTzOffsetMinutes;

  friend bool operator==(const SessionSet&, const SessionSet&) = default;
};

struct RejectedRow {
  std::size_t line = 0;  // 1-based, counting the header
  std::string reason;

  friend bool operator==(const RejectedRow&, const RejectedRow&) = default;
};

struct ParseResult {
  SessionSet sessions;
  std::vector<RejectedRow> rejects;
};

enum class LogFormat { csv, csv_gzip };

/// Sniffs the gzip magic bytes. Throws InputError when the file cannot be opened.
LogFormat detect_format(const std::filesystem::path& path);

/// Parses `user,ap,t_connect,t_disconnect` CSV. Lines starting with '#' and
/// blank lines are skipped. A missing or wrong header throws InputError;
/// individual malformed rows are collected in ParseResult::rejects.
/// Output is sorted with session_less.
ParseResult parse_sessions(std::istream& source,
                           int tz_offset_minutes = kDefaultTzOffsetMinutes);

/// Reads a plain or gzip-compressed session log.
ParseResult read_sessions(const std::filesystem::path& path,
                          int tz_offset_minutes = kDefaultTzOffsetMinutes,
                          std::optional<LogFormat> format = std::nullopt);

/// Resolves same-user overlaps: the earlier session is truncated at the later
/// session's t_connect, and dropped if that leaves it with zero length.
/// Idempotent. Output sorted with session_less.
SessionSet clean_sessions(SessionSet raw);

/// True when no user has two overlapping sessions.
bool sessions_disjoint_per_user(const SessionSet& set);

void write_sessions_csv(std::ostream& out, const SessionSet& set);
void write_rejects_csv(std::ostream& out, std::span<const RejectedRow> rejects);

}  // namespace tempnet
