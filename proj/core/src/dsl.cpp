#include "hyplevel/dsl.hpp"

#include <cctype>
#include <charconv>
#include <string>

namespace hyplevel {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  HoloMap run() {
    HoloMap m = parse();
    skip_ws();
    if (pos_ != text_.size())
      fail("trailing input after map expression");
    return m;
  }

 private:
  [[noreturn]] void fail(const std::string& what) { throw ParseError("parse error: " + what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (pos_ == start)
      fail("expected a map name");
    return text_.substr(start, pos_ - start);
  }

  double number() {
    skip_ws();
    double value = 0.0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin)
      fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  int integer() {
    skip_ws();
    std::size_t start = pos_;
    double v = number();
    int n = static_cast<int>(v);
    if (static_cast<double>(n) != v) {
      pos_ = start;
      fail("expected an integer");
    }
    return n;
  }

  Complex pair_arg() {
    double re = number();
    expect(',');
    double im = number();
    return {re, im};
  }

  HoloMap parse() {
    skip_ws();
    std::size_t name_pos = pos_;
    std::string_view name = ident();
    if (name == "id") return HoloMap::identity();

    expect('(');
    HoloMap result = dispatch(name, name_pos);
    expect(')');
    return result;
  }

  HoloMap dispatch(std::string_view name, std::size_t name_pos) {
    if (name == "const") return HoloMap::constant(pair_arg());
    if (name == "rot") return HoloMap::rotation(number());
    if (name == "scale") return HoloMap::scale(number());
    if (name == "phi") return HoloMap::mobius(pair_arg());
    if (name == "falpha") return HoloMap::f_alpha(number());
    if (name == "kalpha") return HoloMap::k_alpha(number());
    if (name == "galpha") return HoloMap::g_alpha(number());
    if (name == "blaschke") return blaschke_body();
    if (name == "compose") {
      HoloMap outer = parse();
      expect(',');
      HoloMap inner = parse();
      return HoloMap::compose(outer, inner);
    }
    if (name == "mul") {
      HoloMap lhs = parse();
      expect(',');
      HoloMap rhs = parse();
      return HoloMap::product(lhs, rhs);
    }
    if (name == "smul") {
      Complex sigma = pair_arg();
      expect(',');
      return HoloMap::scalar_mul(sigma, parse());
    }
    pos_ = name_pos;
    fail("unknown map '" + std::string(name) + "'");
  }

  HoloMap blaschke_body() {
    expect('[');
    std::vector<BlaschkeZero> zeros;
    if (!peek_is(']')) {
      while (true) {
        expect('(');
        Complex zero = pair_arg();
        expect(',');
        int mult = integer();
        expect(')');
        zeros.push_back({zero, mult});
        if (peek_is(']')) break;
        expect(',');
      }
    }
    expect(']');
    expect(';');
    Complex sigma = pair_arg();
    return HoloMap::blaschke(std::move(zeros), sigma);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

HoloMap parse_map(std::string_view text) {
  try {
    return Parser(text).run();
  } catch (const ParseError&) {
    throw;
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid map parameter: ") + e.what(), 0);
  }
}

}  // namespace hyplevel
