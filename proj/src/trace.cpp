#include "mht/trace.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mht/formula.hpp"
#include "mht/parser.hpp"

namespace mht {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
  for (const auto& n : names_)
    if (!is_atom_name(n))
      throw std::invalid_argument("invalid atom name: '" + n + "'");
  if (names_.size() > max_atoms)
    throw std::invalid_argument("alphabet too large (max " +
                                std::to_string(max_atoms) + " atoms)");
}

std::optional<std::size_t> Alphabet::index_of(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

bool Alphabet::contains_all(const Alphabet& other) const {
  return std::includes(names_.begin(), names_.end(), other.names_.begin(),
                       other.names_.end());
}

AlphabetPtr make_alphabet(std::vector<std::string> names) {
  return std::make_shared<const Alphabet>(std::move(names));
}

Trace::Trace(AlphabetPtr alphabet, std::vector<std::uint64_t> states)
    : alphabet_(std::move(alphabet)), states_(std::move(states)) {
  if (!alphabet_) throw std::invalid_argument("trace needs an alphabet");
  if (states_.empty())
    throw std::invalid_argument("trace length must be at least 1");
  const std::uint64_t valid =
      alphabet_->size() == 64 ? ~0ull : (1ull << alphabet_->size()) - 1;
  for (auto m : states_)
    if (m & ~valid)
      throw std::invalid_argument("trace state mentions unknown atoms");
}

Trace Trace::of_states(AlphabetPtr alphabet,
                       const std::vector<std::vector<std::string>>& states) {
  std::vector<std::uint64_t> masks;
  masks.reserve(states.size());
  for (const auto& st : states) {
    std::uint64_t m = 0;
    for (const auto& a : st) {
      auto idx = alphabet->index_of(a);
      if (!idx)
        throw std::invalid_argument("atom '" + a + "' not in alphabet");
      m |= 1ull << *idx;
    }
    masks.push_back(m);
  }
  return Trace(std::move(alphabet), std::move(masks));
}

std::vector<std::string> Trace::state(std::size_t k) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < alphabet_->size(); ++i)
    if (has(k, i)) out.push_back(alphabet_->name(i));
  return out;
}

Trace Trace::reindexed(AlphabetPtr super) const {
  if (!super->contains_all(*alphabet_))
    throw std::invalid_argument("target alphabet misses atoms of the trace");
  std::vector<std::uint64_t> masks(states_.size(), 0);
  for (std::size_t i = 0; i < alphabet_->size(); ++i) {
    const auto j = *super->index_of(alphabet_->name(i));
    for (std::size_t k = 0; k < states_.size(); ++k)
      if (has(k, i)) masks[k] |= 1ull << j;
  }
  return Trace(std::move(super), std::move(masks));
}

namespace {

void check_comparable(const Trace& a, const Trace& b) {
  if (a.length() != b.length())
    throw std::invalid_argument("traces have different lengths");
  if (!(a.alphabet() == b.alphabet()))
    throw std::invalid_argument("traces have different alphabets");
}

}  // namespace

bool le(const Trace& a, const Trace& b) {
  check_comparable(a, b);
  for (std::size_t k = 0; k < a.length(); ++k)
    if (a.mask(k) & ~b.mask(k)) return false;
  return true;
}

bool lt(const Trace& a, const Trace& b) { return le(a, b) && !(a == b); }

HTTrace::HTTrace(Trace here, Trace there)
    : here_(std::move(here)), there_(std::move(there)) {
  check_comparable(here_, there_);
  for (std::size_t k = 0; k < here_.length(); ++k)
    if (here_.mask(k) & ~there_.mask(k))
      throw std::invalid_argument("H must be pointwise included in T");
}

HTTrace HTTrace::total(Trace t) {
  Trace h = t;
  return HTTrace(std::move(h), std::move(t));
}

bool is_total(const HTTrace& m) { return m.here() == m.there(); }

HTTrace restrict(const HTTrace& m, const Alphabet& a) {
  auto target = std::make_shared<const Alphabet>(a.names());
  std::vector<std::uint64_t> h(m.length(), 0), t(m.length(), 0);
  for (std::size_t j = 0; j < target->size(); ++j) {
    auto idx = m.alphabet().index_of(target->name(j));
    if (!idx) continue;
    for (std::size_t k = 0; k < m.length(); ++k) {
      if (m.here().has(k, *idx)) h[k] |= 1ull << j;
      if (m.there().has(k, *idx)) t[k] |= 1ull << j;
    }
  }
  return HTTrace(Trace(target, std::move(h)), Trace(target, std::move(t)));
}

HTTrace reverse(const HTTrace& m) {
  auto h = m.here().masks();
  auto t = m.there().masks();
  std::reverse(h.begin(), h.end());
  std::reverse(t.begin(), t.end());
  return HTTrace(Trace(m.alphabet_ptr(), std::move(h)),
                 Trace(m.alphabet_ptr(), std::move(t)));
}

namespace {

std::string trim(std::string s) {
  auto issp = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && issp(s.back())) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && issp(s[i])) ++i;
  return s.substr(i);
}

std::vector<std::string> split_atoms(const std::string& side,
                                     std::size_t line_no) {
  std::vector<std::string> out;
  if (side == "-") return out;
  std::stringstream ss(side);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!is_atom_name(item))
      throw ParseError("invalid atom '" + item + "' in trace",
                       SourceSpan{line_no, 1, side.size()});
    out.push_back(item);
  }
  if (out.empty())
    throw ParseError("empty state must be written '-'",
                     SourceSpan{line_no, 1, 1});
  return out;
}

}  // namespace

HTTrace read_trace(std::istream& in, AlphabetPtr alphabet) {
  std::vector<std::vector<std::string>> hs, ts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto pos = line.find('%'); pos != std::string::npos)
      line.erase(pos);
    line = trim(line);
    if (line.empty()) continue;
    if (auto bar = line.find('|'); bar != std::string::npos) {
      hs.push_back(split_atoms(trim(line.substr(0, bar)), line_no));
      ts.push_back(split_atoms(trim(line.substr(bar + 1)), line_no));
    } else {
      auto atoms = split_atoms(line, line_no);
      hs.push_back(atoms);
      ts.push_back(std::move(atoms));
    }
  }
  if (ts.empty())
    throw ParseError("trace file has no time points (length 0 is rejected)",
                     SourceSpan{line_no ? line_no : 1, 1, 1});
  if (!alphabet) {
    std::vector<std::string> names;
    for (const auto& st : ts) names.insert(names.end(), st.begin(), st.end());
    for (const auto& st : hs) names.insert(names.end(), st.begin(), st.end());
    alphabet = make_alphabet(std::move(names));
  }
  return HTTrace(Trace::of_states(alphabet, hs), Trace::of_states(alphabet, ts));
}

HTTrace read_trace(std::string_view text, AlphabetPtr alphabet) {
  std::istringstream in{std::string(text)};
  return read_trace(in, std::move(alphabet));
}

namespace {

void write_side(std::ostream& out, const Trace& t, std::size_t k) {
  auto atoms = t.state(k);
  if (atoms.empty()) {
    out << '-';
    return;
  }
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) out << ',';
    out << atoms[i];
  }
}

}  // namespace

void write_trace(std::ostream& out, const HTTrace& m) {
  const bool total = is_total(m);
  for (std::size_t k = 0; k < m.length(); ++k) {
    if (!total) {
      write_side(out, m.here(), k);
      out << " | ";
    }
    write_side(out, m.there(), k);
    out << '\n';
  }
}

std::string write_trace(const HTTrace& m) {
  std::ostringstream out;
  write_trace(out, m);
  return out.str();
}

}  // namespace mht
