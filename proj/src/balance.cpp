#include "floorsum/balance.hpp"

#include "floorsum/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace floorsum::balance {

namespace {

struct Affine {
  Rational constant;
  std::map<std::string, Rational> coeffs;

  bool is_constant() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const auto& kv) { return kv.second == 0; });
  }
  Affine& operator+=(const Affine& o) {
    constant += o.constant;
    for (const auto& [k, v] : o.coeffs) coeffs[k] += v;
    return *this;
  }
  Affine scaled(const Rational& s) const {
    Affine out{constant * s, {}};
    for (const auto& [k, v] : coeffs) out.coeffs[k] = v * s;
    return out;
  }
};

class FormParser {
 public:
  FormParser(std::string_view text, const std::vector<std::string>& params) : text_(text), params_(params) {}

  Affine parse() {
    Affine a = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return a;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("form '" + std::string(text_) + "': " + what);
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool starts_primary() {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
           c == '(' || c == '.';
  }

  Affine expr() {
    Affine a = term();
    for (;;) {
      const char c = peek();
      if (c == '+') {
        ++pos_;
        a += term();
      } else if (c == '-') {
        ++pos_;
        a += term().scaled(-1);
      } else {
        return a;
      }
    }
  }

  Affine term() {
    Affine a = unary();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        a = multiply(a, unary());
      } else if (c == '/') {
        ++pos_;
        const Affine d = unary();
        if (!d.is_constant()) fail("division by a parameter");
        if (d.constant == 0) fail("division by zero");
        a = a.scaled(1 / d.constant);
      } else if (starts_primary()) {
        a = multiply(a, unary());
      } else {
        return a;
      }
    }
  }

  Affine multiply(const Affine& a, const Affine& b) {
    if (a.is_constant()) return b.scaled(a.constant);
    if (b.is_constant()) return a.scaled(b.constant);
    fail("product of two parameters is not affine");
  }

  Affine unary() {
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return unary().scaled(-1);
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return primary();
  }

  Affine primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Affine a = expr();
      if (peek() != ')') fail("missing ')'");
      ++pos_;
      return a;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      if (std::find(params_.begin(), params_.end(), name) == params_.end()) {
        fail("undeclared parameter '" + name + "'");
      }
      Affine a;
      a.coeffs[name] = 1;
      return a;
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, c) + "'");
  }

  Affine number() {
    BigInt num = 0;
    BigInt den = 1;
    bool digits = false;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      num = num * 10 + (text_[pos_++] - '0');
      digits = true;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        num = num * 10 + (text_[pos_++] - '0');
        den *= 10;
        digits = true;
      }
    }
    if (!digits) fail("malformed number");
    return Affine{Rational(num, den), {}};
  }

  std::string_view text_;
  const std::vector<std::string>& params_;
  std::size_t pos_ = 0;
};

// Solves the square system rows * v = rhs exactly; nullopt when singular.
std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = b[i] / a[i][i];
  return v;
}

struct Bounds {
  std::vector<Rational> lo;
  std::vector<Rational> hi;
};

bool lex_less(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct Candidate {
  std::vector<Rational> point;
  Rational value;
};

Candidate solve_boxed(const std::vector<LinearExponentForm>& forms, const std::vector<std::string>& params,
                      const Bounds& bounds, std::size_t& examined) {
  const std::size_t d = params.size();
  auto max_at = [&](const std::vector<Rational>& p) {
    Rational best;
    for (std::size_t j = 0; j < forms.size(); ++j) {
      Rational v = forms[j].constant;
      for (std::size_t i = 0; i < d; ++i) {
        auto it = forms[j].coefficients.find(params[i]);
        if (it != forms[j].coefficients.end()) v += it->second * p[i];
      }
      if (j == 0 || v > best) best = v;
    }
    return best;
  };

  if (d == 0) {
    ++examined;
    return {{}, max_at({})};
  }

  // rows over (p_0..p_{d-1}, t)
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (const auto& f : forms) {
    std::vector<Rational> row(d + 1);
    for (std::size_t i = 0; i < d; ++i) {
      auto it = f.coefficients.find(params[i]);
      if (it != f.coefficients.end()) row[i] = it->second;
    }
    row[d] = -1;
    rows.push_back(std::move(row));
    rhs.push_back(-f.constant);
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (const Rational* bound : {&bounds.lo[i], &bounds.hi[i]}) {
      std::vector<Rational> row(d + 1);
      row[i] = 1;
      rows.push_back(std::move(row));
      rhs.push_back(*bound);
    }
  }

  std::optional<Candidate> best;
  const std::size_t total = rows.size();
  const std::size_t pick = d + 1;
  std::vector<bool> mask(total, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(std::min(pick, total)), true);
  if (pick > total) throw DomainError("balance: too few constraints to determine a vertex");
  do {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (std::size_t r = 0; r < total; ++r) {
      if (!mask[r]) continue;
      a.push_back(rows[r]);
      b.push_back(rhs[r]);
    }
    auto v = solve(std::move(a), std::move(b));
    if (!v) continue;
    std::vector<Rational> p(v->begin(), v->begin() + static_cast<std::ptrdiff_t>(d));
    bool inside = true;
    for (std::size_t i = 0; i < d && inside; ++i) inside = p[i] >= bounds.lo[i] && p[i] <= bounds.hi[i];
    if (!inside) continue;
    ++examined;
    Rational value = max_at(p);
    if (!best || value < best->value || (value == best->value && lex_less(p, best->point))) {
      best = Candidate{std::move(p), std::move(value)};
    }
  } while (std::prev_permutation(mask.begin(), mask.end()));

  if (!best) throw DomainError("balance: no feasible vertex");
  return *best;
}

}  // namespace

Rational LinearExponentForm::evaluate(const Assignment& at) const {
  Rational v = constant;
  for (const auto& [name, c] : coefficients) {
    if (c == 0) continue;
    auto it = at.find(name);
    if (it == at.end()) throw DomainError("evaluate: no value for parameter '" + name + "'");
    v += c * it->second;
  }
  return v;
}

std::string LinearExponentForm::to_string() const {
  std::ostringstream os;
  os << floorsum::to_string(constant);
  for (const auto& [name, c] : coefficients) {
    if (c == 0) continue;
    os << (c < 0 ? " - " : " + ");
    const Rational a = c < 0 ? Rational(-c) : c;
    if (a != 1) os << "(" << floorsum::to_string(a) << ")*";
    os << name;
  }
  return os.str();
}

LinearExponentForm parse_form(std::string_view text, const std::vector<std::string>& params, std::string label) {
  Affine a = FormParser(text, params).parse();
  LinearExponentForm f;
  f.label = label.empty() ? std::string(text) : std::move(label);
  f.constant = a.constant;
  for (auto& [k, v] : a.coeffs)
    if (v != 0) f.coefficients[k] = v;
  return f;
}

BalanceSolution minimize_max(const std::vector<LinearExponentForm>& forms, const std::vector<std::string>& params,
                             const std::map<std::string, ParameterBox>& box) {
  if (forms.empty()) throw DomainError("minimize_max: no forms");
  if (params.size() > 3) throw DomainError("minimize_max: at most 3 parameters");
  for (const auto& f : forms) {
    for (const auto& [name, c] : f.coefficients) {
      if (std::find(params.begin(), params.end(), name) == params.end()) {
        throw DomainError("minimize_max: form '" + f.label + "' uses undeclared parameter '" + name + "'");
      }
    }
  }
  for (const auto& [name, b] : box) {
    if (std::find(params.begin(), params.end(), name) == params.end()) {
      throw DomainError("minimize_max: box for undeclared parameter '" + name + "'");
    }
    if (b.lo && b.hi && *b.lo > *b.hi) throw DomainError("minimize_max: infeasible box for '" + name + "'");
  }

  bool bounded = true;
  auto make_bounds = [&](const Rational& artificial) {
    Bounds bounds;
    for (const auto& p : params) {
      auto it = box.find(p);
      const ParameterBox b = it == box.end() ? ParameterBox{} : it->second;
      if (!b.lo || !b.hi) bounded = false;
      bounds.lo.push_back(b.lo.value_or(-artificial));
      bounds.hi.push_back(b.hi.value_or(artificial));
    }
    return bounds;
  };

  BalanceSolution sol;
  const Rational big(1 << 20);
  Candidate best = solve_boxed(forms, params, make_bounds(big), sol.candidates_examined);
  if (!bounded) {
    // The program is bounded below iff widening the artificial box leaves the optimum unchanged.
    const Candidate wider = solve_boxed(forms, params, make_bounds(big * 2), sol.candidates_examined);
    if (wider.value != best.value) throw DomainError("minimize_max: objective is unbounded below");
  }

  for (std::size_t i = 0; i < params.size(); ++i) sol.assignment[params[i]] = best.point[i];
  sol.value = best.value;
  for (const auto& f : forms)
    if (f.evaluate(sol.assignment) == sol.value) sol.active.push_back(f.label);
  return sol;
}

FormValues evaluate_at(const std::vector<LinearExponentForm>& forms, const Assignment& at) {
  if (forms.empty()) throw DomainError("evaluate_at: no forms");
  FormValues out;
  for (std::size_t j = 0; j < forms.size(); ++j) {
    Rational v = forms[j].evaluate(at);
    if (j == 0 || v > out.max) out.max = v;
    out.values.emplace_back(forms[j].label, std::move(v));
  }
  return out;
}

}  // namespace floorsum::balance
