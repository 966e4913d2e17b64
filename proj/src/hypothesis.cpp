#include "gml/hypothesis.hpp"

#include <algorithm>
#include <charconv>
#include <iterator>

#include "gml/config.hpp"
#include "gml/error.hpp"

namespace gml {

namespace {

void require_depth(unsigned depth) {
  if (depth < 1 || depth > kMaxRepresentableDepth) {
    fail(ErrorCode::InvalidArgument,
         "hypothesis depth must lie in [1, 63], got " + std::to_string(depth));
  }
}

Cell parse_cell(std::string_view text, unsigned depth) {
  if (text.size() != depth) {
    fail(ErrorCode::Parse, "cell '" + std::string(text) + "' does not have " +
                               std::to_string(depth) + " bits");
  }
  Cell c = 0;
  for (char ch : text) {
    if (ch != '0' && ch != '1') {
      fail(ErrorCode::Parse, "cell '" + std::string(text) + "' is not a binary string");
    }
    c = (c << 1) | static_cast<Cell>(ch - '0');
  }
  return c;
}

}  // namespace

BitString BitString::parse(std::string_view text) {
  if (text.empty()) fail(ErrorCode::Parse, "bit string must have length >= 1");
  BitString out;
  out.length_ = text.size();
  out.words_.assign((text.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch != '0' && ch != '1') {
      fail(ErrorCode::Parse, "bit string contains non-binary symbol '" + std::string(1, ch) + "'");
    }
    if (ch == '1') out.words_[i / 64] |= std::uint64_t{1} << (63 - i % 64);
  }
  return out;
}

BitString BitString::from_bits(std::span<const std::uint8_t> bits) {
  if (bits.empty()) fail(ErrorCode::InvalidArgument, "bit string must have length >= 1");
  BitString out;
  out.length_ = bits.size();
  out.words_.assign((bits.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) fail(ErrorCode::InvalidArgument, "bit values must be 0 or 1");
    if (bits[i] != 0) out.words_[i / 64] |= std::uint64_t{1} << (63 - i % 64);
  }
  return out;
}

Cell BitString::prefix(unsigned n) const {
  if (n < 1 || n > kMaxRepresentableDepth) {
    fail(ErrorCode::InvalidArgument, "prefix length must lie in [1, 63]");
  }
  if (n > length_) {
    fail(ErrorCode::InstanceTooShort, "instance of length " + std::to_string(length_) +
                                          " is shorter than depth " + std::to_string(n));
  }
  return words_[0] >> (64 - n);
}

std::string BitString::to_string() const {
  std::string s(length_, '0');
  for (std::size_t i = 0; i < length_; ++i) {
    if (bit(i)) s[i] = '1';
  }
  return s;
}

Hypothesis Hypothesis::empty(unsigned depth) {
  require_depth(depth);
  return Hypothesis(depth, {});
}

Hypothesis Hypothesis::full(unsigned depth) {
  require_depth(depth);
  require_within_cap(depth, "full hypothesis");
  std::vector<Cell> cells(std::size_t{1} << depth);
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = i;
  return Hypothesis(depth, std::move(cells));
}

Hypothesis Hypothesis::from_cells(unsigned depth, std::vector<Cell> cells) {
  require_depth(depth);
  std::sort(cells.begin(), cells.end());
  if (std::adjacent_find(cells.begin(), cells.end()) != cells.end()) {
    fail(ErrorCode::InvalidArgument, "duplicate cell in hypothesis");
  }
  if (!cells.empty() && cells.back() >> depth != 0) {
    fail(ErrorCode::InvalidArgument,
         "cell value exceeds 2^" + std::to_string(depth) + " - 1");
  }
  return Hypothesis(depth, std::move(cells));
}

Hypothesis Hypothesis::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0) {
    fail(ErrorCode::Parse, "hypothesis '" + std::string(text) + "' is not of the form n:c1,c2,...");
  }
  unsigned depth = 0;
  const auto head = text.substr(0, colon);
  const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), depth);
  if (ec != std::errc{} || ptr != head.data() + head.size()) {
    fail(ErrorCode::Parse, "hypothesis depth '" + std::string(head) + "' is not an integer");
  }
  if (depth < 1 || depth > kMaxRepresentableDepth) {
    fail(ErrorCode::Parse, "hypothesis depth must lie in [1, 63], got " + std::string(head));
  }
  std::vector<Cell> cells;
  auto rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    cells.push_back(parse_cell(rest.substr(0, comma), depth));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
    if (rest.empty()) fail(ErrorCode::Parse, "trailing comma in hypothesis");
  }
  std::sort(cells.begin(), cells.end());
  if (std::adjacent_find(cells.begin(), cells.end()) != cells.end()) {
    fail(ErrorCode::Parse, "duplicate cell in hypothesis '" + std::string(text) + "'");
  }
  return Hypothesis(depth, std::move(cells));
}

bool Hypothesis::contains(Cell c) const noexcept {
  return std::binary_search(cells_.begin(), cells_.end(), c);
}

std::string Hypothesis::to_string() const {
  std::string out = std::to_string(depth_) + ":";
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (i > 0) out += ',';
    out += cell_to_string(cells_[i], depth_);
  }
  return out;
}

std::string cell_to_string(Cell cell, unsigned depth) {
  std::string s(depth, '0');
  for (unsigned i = 0; i < depth; ++i) {
    if ((cell >> (depth - 1 - i)) & 1U) s[i] = '1';
  }
  return s;
}

Label evaluate(const Hypothesis& h, const BitString& x) {
  return h.contains(x.prefix(h.depth())) ? Label::One : Label::Zero;
}

Hypothesis refine(const Hypothesis& h, unsigned depth) {
  if (depth < h.depth()) {
    fail(ErrorCode::InvalidArgument, "cannot refine depth " + std::to_string(h.depth()) +
                                         " hypothesis to smaller depth " + std::to_string(depth));
  }
  if (depth == h.depth()) return h;
  if (depth > kMaxRepresentableDepth) {
    fail(ErrorCode::InvalidArgument, "refinement depth must be <= 63");
  }
  require_within_cap(depth, "refine");
  const unsigned shift = depth - h.depth();
  const Cell fan = Cell{1} << shift;
  std::vector<Cell> cells;
  cells.reserve(h.cell_count() * fan);
  for (Cell c : h.cells()) {
    const Cell base = c << shift;
    for (Cell j = 0; j < fan; ++j) cells.push_back(base | j);
  }
  return Hypothesis::from_cells(depth, std::move(cells));
}

Hypothesis complement(const Hypothesis& h) {
  require_within_cap(h.depth(), "complement");
  const Cell total = Cell{1} << h.depth();
  std::vector<Cell> cells;
  cells.reserve(total - h.cell_count());
  auto it = h.cells().begin();
  for (Cell c = 0; c < total; ++c) {
    if (it != h.cells().end() && *it == c) {
      ++it;
    } else {
      cells.push_back(c);
    }
  }
  return Hypothesis::from_cells(h.depth(), std::move(cells));
}

Hypothesis combine(const Hypothesis& a, const Hypothesis& b, SetOp op) {
  const unsigned depth = std::max(a.depth(), b.depth());
  const Hypothesis ra = refine(a, depth);
  const Hypothesis rb = refine(b, depth);
  const auto x = ra.cells();
  const auto y = rb.cells();
  std::vector<Cell> out;
  auto sink = std::back_inserter(out);
  switch (op) {
    case SetOp::Union:
      std::set_union(x.begin(), x.end(), y.begin(), y.end(), sink);
      break;
    case SetOp::Intersection:
      std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), sink);
      break;
    case SetOp::Difference:
      std::set_difference(x.begin(), x.end(), y.begin(), y.end(), sink);
      break;
    case SetOp::SymmetricDifference:
      std::set_symmetric_difference(x.begin(), x.end(), y.begin(), y.end(), sink);
      break;
  }
  return Hypothesis::from_cells(depth, std::move(out));
}

Hypothesis symmetric_difference_cells(const Hypothesis& a, const Hypothesis& b) {
  return combine(a, b, SetOp::SymmetricDifference);
}

bool equivalent(const Hypothesis& a, const Hypothesis& b) {
  const unsigned depth = std::max(a.depth(), b.depth());
  return refine(a, depth) == refine(b, depth);
}

bool is_subset(const Hypothesis& a, const Hypothesis& b) {
  const unsigned depth = std::max(a.depth(), b.depth());
  const Hypothesis ra = refine(a, depth);
  const Hypothesis rb = refine(b, depth);
  return std::includes(rb.cells().begin(), rb.cells().end(), ra.cells().begin(), ra.cells().end());
}

LabeledSample::LabeledSample(std::vector<LabeledExample> examples)
    : examples_(std::move(examples)) {
  if (examples_.empty()) fail(ErrorCode::InvalidArgument, "labeled sample must be non-empty");
  min_length_ = examples_.front().x.length();
  for (const auto& e : examples_) min_length_ = std::min(min_length_, e.x.length());
}

void LabeledSample::require_length(unsigned depth) const {
  if (min_length_ < depth) {
    fail(ErrorCode::InstanceTooShort, "sample contains an instance of length " +
                                          std::to_string(min_length_) +
                                          ", shorter than depth " + std::to_string(depth));
  }
}

}  // namespace gml
