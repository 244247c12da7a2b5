#include "fthresh/parse.hpp"

#include <algorithm>
#include <cctype>

#include "fthresh/errors.hpp"

namespace fthresh {

namespace {

class PolynomialParser {
 public:
  PolynomialParser(std::string_view text, const RingPtr& ring, std::size_t base_offset)
      : text_(text), ring_(ring), base_(base_offset) {
    order_.resize(ring->dimension());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    const auto& vars = ring->variables();
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return vars[a].size() > vars[b].size(); });
  }

  Polynomial parse() {
    skip_ws();
    if (at_end()) fail("empty polynomial");
    std::vector<Term> terms;
    bool negative = consume_sign();
    for (;;) {
      Term t = parse_term();
      if (negative) t.coeff = (ring_->prime() - t.coeff % ring_->prime()) % ring_->prime();
      terms.push_back(std::move(t));
      skip_ws();
      if (at_end()) break;
      if (!peek_sign()) fail(std::string("unexpected character '") + text_[pos_] + "'");
      negative = consume_sign();
    }
    return Polynomial(ring_, std::move(terms));
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, base_ + pos_); }

  bool at_end() const { return pos_ >= text_.size(); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  // ASCII '-' or U+2212.
  std::size_t minus_width() const {
    if (at_end()) return 0;
    if (text_[pos_] == '-') return 1;
    if (text_.substr(pos_, 3) == "\xE2\x88\x92") return 3;
    return 0;
  }

  bool peek_sign() const { return !at_end() && (text_[pos_] == '+' || minus_width() > 0); }

  // Consumes any run of signs; returns true when the net sign is negative.
  bool consume_sign() {
    bool negative = false;
    skip_ws();
    while (peek_sign()) {
      if (text_[pos_] == '+') {
        ++pos_;
      } else {
        pos_ += minus_width();
        negative = !negative;
      }
      skip_ws();
    }
    return negative;
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Term parse_term() {
    skip_ws();
    const std::uint64_t p = ring_->prime();
    std::uint64_t coeff = 1;
    std::vector<std::uint64_t> exps(ring_->dimension(), 0);
    bool any = false;
    if (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      coeff = reduce_mod(BigInt(digits(), 10), p);
      any = true;
    }
    for (;;) {
      skip_ws();
      if (at_end()) break;
      if (text_[pos_] == '*') {
        ++pos_;
        skip_ws();
        if (at_end() || !std::isalpha(static_cast<unsigned char>(text_[pos_]))) fail("expected a variable after '*'");
      }
      if (!std::isalpha(static_cast<unsigned char>(text_[pos_]))) break;
      const std::size_t var = match_variable();
      skip_ws();
      std::uint64_t e = 1;
      if (!at_end() && text_[pos_] == '^') {
        ++pos_;
        skip_ws();
        const std::string d = digits();
        if (d.empty()) fail("malformed exponent");
        const BigInt big(d, 10);
        if (!mpz_fits_ulong_p(big.get_mpz_t())) fail("exponent too large");
        e = big.get_ui();
      }
      if (__builtin_add_overflow(exps[var], e, &exps[var])) fail("exponent too large");
      any = true;
    }
    if (!any) fail(at_end() ? "expected a term" : std::string("unexpected character '") + text_[pos_] + "'");
    return Term{Monomial(std::move(exps)), coeff};
  }

  std::size_t match_variable() {
    const auto& vars = ring_->variables();
    for (std::size_t idx : order_) {
      if (text_.substr(pos_, vars[idx].size()) == vars[idx]) {
        pos_ += vars[idx].size();
        return idx;
      }
    }
    std::size_t end = pos_;
    while (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) ++end;
    fail("unknown variable '" + std::string(text_.substr(pos_, end - pos_)) + "'");
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t base_;
  std::size_t pos_ = 0;
  std::vector<std::size_t> order_;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
  return PolynomialParser(text, ring, 0).parse();
}

std::vector<Polynomial> parse_generators(std::string_view text, const RingPtr& ring) {
  std::vector<Polynomial> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t semi = text.find(';', start);
    const std::string_view piece = text.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
    out.push_back(PolynomialParser(piece, ring, start).parse());
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return out;
}

std::vector<std::string> parse_variable_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    std::string_view piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.front()))) piece.remove_prefix(1);
    while (!piece.empty() && std::isspace(static_cast<unsigned char>(piece.back()))) piece.remove_suffix(1);
    if (piece.empty()) throw ParseError("empty variable name", start);
    if (!std::isalpha(static_cast<unsigned char>(piece.front()))) throw ParseError("variable names must start with a letter", start);
    for (char c : piece) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') throw ParseError("bad character in variable name", start);
    }
    out.emplace_back(piece);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace fthresh
