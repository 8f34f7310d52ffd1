#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "subprob/sep.hpp"
#include "text_cursor.hpp"

namespace subprob {

namespace {

std::vector<std::string> parse_id_list(detail::TextCursor& cursor) {
  std::vector<std::string> ids;
  if (cursor.at_end()) return ids;
  do {
    ids.push_back(cursor.identifier());
  } while (cursor.consume(','));
  cursor.expect_end();
  return ids;
}

}  // namespace

SepSystem parse_sep(std::string_view text) {
  std::vector<std::string> states;
  std::vector<std::string> experiments;
  bool have_states = false;
  bool have_experiments = false;
  SubsetProbabilityTable table;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    detail::TextCursor cursor(line);
    if (cursor.at_end()) continue;
    try {
      std::size_t keyword_column = cursor.column();
      std::string keyword = cursor.identifier();
      if (keyword == "states" || keyword == "experiments") {
        bool& seen = keyword == "states" ? have_states : have_experiments;
        if (seen) throw ParseError(0, keyword_column, "duplicate '" + keyword + ":' directive");
        seen = true;
        cursor.expect(':');
        (keyword == "states" ? states : experiments) = parse_id_list(cursor);
      } else if (keyword == "mu") {
        std::string experiment = cursor.identifier();
        std::string state = cursor.identifier();
        cursor.expect('=');
        std::size_t set_column = cursor.column();
        UnitIntervalSet value;
        try {
          value = parse_interval_set(line.substr(set_column - 1));
        } catch (const ParseError& e) {
          throw e.relocated(0, set_column - 1);
        }
        if (!table.emplace(TableKey{experiment, state}, std::move(value)).second) {
          throw ParseError(0, keyword_column, "duplicate entry for mu(" + experiment + ", " + state + ")");
        }
        continue;
      } else {
        throw ParseError(0, keyword_column, "unknown directive '" + keyword + "'");
      }
    } catch (const ParseError& e) {
      throw e.relocated(line_no, 0);
    }
  }

  if (std::find(experiments.begin(), experiments.end(), kUnitSymbol) == experiments.end()) {
    experiments.insert(experiments.begin(), std::string(kUnitSymbol));
  }
  for (const auto& s : states) {
    table.emplace(TableKey{std::string(kUnitSymbol), s}, UnitIntervalSet::point(1));
  }
  return SepSystem(std::move(states), std::move(experiments), std::move(table));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

SepSystem load_sep(const std::filesystem::path& path) { return parse_sep(read_text_file(path)); }

std::string format_sep(const SepSystem& sys) {
  std::ostringstream out;
  auto list = [&](const std::vector<std::string>& ids) {
    for (std::size_t i = 0; i < ids.size(); ++i) out << (i ? ", " : "") << ids[i];
    out << '\n';
  };
  out << "states: ";
  list(sys.states());
  out << "experiments: ";
  list(sys.experiments());
  const auto unit = UnitIntervalSet::point(1);
  // Declaration order, then any stray rows the declarations do not cover.
  std::set<TableKey> written;
  for (const auto& e : sys.experiments()) {
    for (const auto& s : sys.states()) {
      auto it = sys.table().find({e, s});
      if (it == sys.table().end()) continue;
      written.insert(it->first);
      if (e == kUnitSymbol && it->second == unit) continue;
      out << "mu " << e << ' ' << s << " = " << it->second << '\n';
    }
  }
  for (const auto& [key, value] : sys.table()) {
    if (!written.count(key)) out << "mu " << key.first << ' ' << key.second << " = " << value << '\n';
  }
  return out.str();
}

void save_sep(const SepSystem& sys, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << format_sep(sys);
}

}  // namespace subprob
