#include "oppsyn/io.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "oppsyn/error.hpp"

namespace oppsyn {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.emplace_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto pos = text.find('\n', start);
    if (pos == std::string_view::npos) pos = text.size();
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view s, const char* what) {
  T v{};
  s = trim(s);
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw FormatError(std::string("bad ") + what + " '" + std::string(s) + "'");
  return v;
}

std::string symbol_text(const Dfa& d, Symbol a) {
  std::string out;
  for (const auto& n : d.props())
    if (d.names_of(a).contains(n)) out += (out.empty() ? "" : ",") + n;
  return out.empty() ? "-" : out;
}

}  // namespace

std::string write_dfa(const Dfa& d) {
  std::ostringstream os;
  os << "dfa " << d.num_states() << ' ' << d.initial() << " ; props: ";
  if (d.props().empty()) os << '-';
  for (std::size_t i = 0; i < d.props().size(); ++i) os << (i ? "," : "") << d.props()[i];
  os << '\n';
  for (DfaState q = 0; q < d.num_states(); ++q)
    for (Symbol a = 0; a < d.num_symbols(); ++a)
      if (auto dst = d.next(q, a)) os << q << ' ' << symbol_text(d, a) << ' ' << *dst << '\n';
  os << "accepting:";
  for (DfaState q : d.accepting_states()) os << ' ' << q;
  os << '\n';
  return os.str();
}

Dfa read_dfa(std::string_view text) {
  std::vector<std::string_view> lines;
  for (auto l : lines_of(text)) {
    l = trim(l);
    if (!l.empty() && l.front() != '#') lines.push_back(l);
  }
  if (lines.empty()) throw FormatError("empty DFA file");

  const auto header = lines.front();
  const auto semi = header.find(';');
  if (header.substr(0, 4) != "dfa " || semi == std::string_view::npos)
    throw FormatError("DFA header must read 'dfa <n> <initial> ; props: <list>'");
  const auto counts = split(trim(header.substr(4, semi - 4)), ' ');
  if (counts.size() != 2) throw FormatError("DFA header needs a state count and an initial state");
  const auto n = parse_number<std::size_t>(counts[0], "state count");
  const auto init = parse_number<DfaState>(counts[1], "initial state");
  auto props_text = trim(header.substr(semi + 1));
  if (props_text.substr(0, 6) != "props:") throw FormatError("DFA header lacks 'props:'");
  props_text = trim(props_text.substr(6));
  std::vector<std::string> props;
  if (props_text != "-") props = split(props_text, ',');

  try {
    Dfa d(props, n, init);
    bool saw_accepting = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const auto l = lines[i];
      if (l.substr(0, 10) == "accepting:") {
        if (saw_accepting) throw FormatError("duplicate 'accepting:' line");
        saw_accepting = true;
        std::istringstream is{std::string(l.substr(10))};
        std::string tok;
        while (is >> tok) d.set_accepting(parse_number<DfaState>(tok, "accepting state"), true);
        continue;
      }
      const auto parts = split(l, ' ');
      if (parts.size() != 3) throw FormatError("bad DFA transition line '" + std::string(l) + "'");
      std::set<std::string> names;
      if (parts[1] != "-")
        for (auto& p : split(parts[1], ',')) names.insert(p);
      const Symbol a = d.symbol_of(names);
      const auto src = parse_number<DfaState>(parts[0], "state");
      if (d.next(src, a)) throw FormatError("duplicate transition in line '" + std::string(l) + "'");
      d.set_transition(src, a, parse_number<DfaState>(parts[2], "state"));
    }
    if (!saw_accepting) throw FormatError("DFA file lacks an 'accepting:' line");
    if (d.is_complete()) d.detect_sink();
    return d;
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(std::string("invalid DFA: ") + e.what());
  }
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

namespace {

constexpr std::string_view kChecksumPrefix = "# scenario-checksum: ";
constexpr std::string_view kHeader = "state_id,state,label,value,action";

std::string quoted(const std::string& s) { return s.empty() ? s : '"' + s + '"'; }

std::vector<std::string> csv_fields(std::string_view line) {
  std::vector<std::string> out(1);
  bool in_quotes = false;
  for (char c : line) {
    if (c == '"') in_quotes = !in_quotes;
    else if (c == ',' && !in_quotes) out.emplace_back();
    else out.back() += c;
  }
  if (in_quotes) throw FormatError("unterminated quote in '" + std::string(line) + "'");
  return out;
}

}  // namespace

std::string write_state_table(const StateTable& table) {
  std::string out;
  out += kChecksumPrefix;
  out += table.checksum;
  out += '\n';
  out += kHeader;
  out += '\n';
  char value[64];
  for (const StateRow& r : table.rows) {
    std::snprintf(value, sizeof value, "%.6f", r.value);
    out += r.state_id ? std::to_string(*r.state_id) : "-";
    out += ',' + quoted(r.state) + ',' + quoted(r.label) + ',' + value + ',' + r.action + '\n';
  }
  return out;
}

StateTable read_state_table(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.size() < 2 || lines[0].substr(0, kChecksumPrefix.size()) != kChecksumPrefix)
    throw FormatError("state table must start with '" + std::string(trim(kChecksumPrefix)) + "'");
  StateTable t;
  t.checksum = std::string(trim(lines[0].substr(kChecksumPrefix.size())));
  if (trim(lines[1]) != kHeader) throw FormatError("state table header must be '" +
                                                   std::string(kHeader) + "'");
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    const auto f = csv_fields(line);
    if (f.size() != 5) throw FormatError("expected 5 fields in '" + std::string(line) + "'");
    StateRow r;
    if (f[0] != "-") r.state_id = parse_number<std::uint32_t>(f[0], "state id");
    r.state = f[1];
    r.label = f[2];
    r.value = parse_number<double>(f[3], "value");
    r.action = f[4];
    t.rows.push_back(std::move(r));
  }
  return t;
}

}  // namespace oppsyn
