#include "vcpc/energy_model.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "vcpc/error.hpp"
#include "vcpc/text.hpp"

namespace vcpc {

namespace {

bool tuple_less(const Term& a, const Term& b) {
  if (a.vars.size() != b.vars.size()) return a.vars.size() < b.vars.size();
  return a.vars < b.vars;
}

}  // namespace

EnergyModel::EnergyModel(std::size_t num_vars) : EnergyModel(num_vars, {}) {}

EnergyModel::EnergyModel(std::size_t num_vars, std::vector<Term> terms) : num_vars_(num_vars) {
  for (auto& t : terms) {
    std::sort(t.vars.begin(), t.vars.end());
    t.vars.erase(std::unique(t.vars.begin(), t.vars.end()), t.vars.end());
    if (!t.vars.empty() && t.vars.back() >= num_vars)
      throw IndexError("term variable " + std::to_string(t.vars.back()) +
                       " out of range for " + std::to_string(num_vars) + " variables");
  }
  std::stable_sort(terms.begin(), terms.end(), tuple_less);

  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < terms.size() && terms[j].vars == terms[i].vars) sum += terms[j++].coeff;
    if (terms[i].vars.empty()) {
      constant_ += sum;
    } else if (sum != 0.0) {
      coeffs_.push_back(sum);
      vars_.insert(vars_.end(), terms[i].vars.begin(), terms[i].vars.end());
      offsets_.push_back(vars_.size());
      max_order_ = std::max(max_order_, terms[i].vars.size());
    }
    i = j;
  }

  std::vector<std::size_t> counts(num_vars_ + 1, 0);
  for (VarIndex v : vars_) ++counts[v + 1];
  incidence_offsets_.assign(num_vars_ + 1, 0);
  std::partial_sum(counts.begin(), counts.end(), incidence_offsets_.begin());
  incidence_.resize(vars_.size());
  std::vector<std::size_t> cursor(incidence_offsets_.begin(), incidence_offsets_.end() - 1);
  for (std::size_t t = 0; t < coeffs_.size(); ++t)
    for (VarIndex v : term_vars(t)) incidence_[cursor[v]++] = static_cast<std::uint32_t>(t);
}

std::vector<Term> EnergyModel::terms() const {
  std::vector<Term> out;
  out.reserve(num_terms() + 1);
  if (constant_ != 0.0) out.push_back({constant_, {}});
  for (std::size_t t = 0; t < num_terms(); ++t) {
    auto vs = term_vars(t);
    out.push_back({coeffs_[t], {vs.begin(), vs.end()}});
  }
  return out;
}

EnergyModel EnergyModel::shifted(double delta) const {
  EnergyModel copy = *this;
  copy.constant_ += delta;
  return copy;
}

ModelBuilder& ModelBuilder::add(double coeff, std::vector<VarIndex> vars) {
  terms_.push_back({coeff, std::move(vars)});
  return *this;
}

ModelBuilder& ModelBuilder::add_constant(double coeff) {
  terms_.push_back({coeff, {}});
  return *this;
}

EnergyModel ModelBuilder::build() && { return EnergyModel(num_vars_, std::move(terms_)); }
EnergyModel ModelBuilder::build() const& { return EnergyModel(num_vars_, terms_); }

std::size_t ClampMask::num_free() const {
  return static_cast<std::size_t>(std::count(status_.begin(), status_.end(), VarStatus::Free));
}

void ClampMask::apply(State& s) const {
  for (std::size_t v = 0; v < status_.size(); ++v) {
    if (status_[v] == VarStatus::ClampedZero) s[v] = 0;
    if (status_[v] == VarStatus::ClampedOne) s[v] = 1;
  }
}

double eval_energy(const EnergyModel& model, std::span<const std::uint8_t> s) {
  if (s.size() != model.num_vars())
    throw DimensionError("state length " + std::to_string(s.size()) + " does not match " +
                         std::to_string(model.num_vars()) + " variables");
  double e = model.constant();
  for (std::size_t t = 0; t < model.num_terms(); ++t) {
    bool on = true;
    for (VarIndex v : model.term_vars(t)) {
      if (!s[v]) {
        on = false;
        break;
      }
    }
    if (on) e += model.coeff(t);
  }
  return e;
}

double update_drive(const EnergyModel& model, std::span<const std::uint8_t> s, VarIndex k) {
  if (k >= model.num_vars())
    throw IndexError("variable " + std::to_string(k) + " out of range");
  double drive = 0.0;
  for (std::uint32_t t : model.incident_terms(k)) {
    bool on = true;
    for (VarIndex v : model.term_vars(t)) {
      if (v != k && !s[v]) {
        on = false;
        break;
      }
    }
    if (on) drive -= model.coeff(t);
  }
  return drive;
}

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

State state_from_index(std::uint64_t index, std::size_t num_vars) {
  State s(num_vars);
  for (std::size_t v = 0; v < num_vars; ++v) s[v] = static_cast<std::uint8_t>((index >> v) & 1U);
  return s;
}

std::vector<double> exact_boltzmann(const EnergyModel& model, double beta) {
  const std::size_t n = model.num_vars();
  if (n > kMaxEnumerationVars)
    throw CapacityError("exact enumeration limited to " + std::to_string(kMaxEnumerationVars) +
                        " variables, got " + std::to_string(n));
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<double> weights(count);
  State s(n, 0);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    for (std::size_t v = 0; v < n; ++v) s[v] = static_cast<std::uint8_t>((idx >> v) & 1U);
    weights[idx] = -beta * eval_energy(model, s);
  }
  const double top = *std::max_element(weights.begin(), weights.end());
  double z = 0.0;
  for (double& w : weights) {
    w = std::exp(w - top);
    z += w;
  }
  for (double& w : weights) w /= z;
  return weights;
}

void save_hubo(std::ostream& out, const EnergyModel& model) {
  out << "hubo " << model.num_vars() << '\n';
  for (const auto& term : model.terms()) {
    out << format_number(term.coeff);
    for (VarIndex v : term.vars) out << ' ' << v;
    out << '\n';
  }
}

EnergyModel load_hubo(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  long long num_vars = -1;
  std::vector<Term> terms;
  while (std::getline(in, line)) {
    ++line_no;
    auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto tokens = split_ws(body);
    if (num_vars < 0) {
      if (tokens.size() != 2 || tokens[0] != "hubo")
        throw ParseError("line " + std::to_string(line_no) + ": expected 'hubo <N>' header");
      num_vars = parse_int(tokens[1]);
      if (num_vars < 0) throw ParseError("negative variable count");
      continue;
    }
    Term term;
    term.coeff = parse_double(tokens[0]);
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      const long long v = parse_int(tokens[i]);
      if (v < 0 || v >= num_vars)
        throw ParseError("line " + std::to_string(line_no) + ": variable index out of range");
      term.vars.push_back(static_cast<VarIndex>(v));
    }
    terms.push_back(std::move(term));
  }
  if (num_vars < 0) throw ParseError("missing 'hubo <N>' header");
  return EnergyModel(static_cast<std::size_t>(num_vars), std::move(terms));
}

}  // namespace vcpc
