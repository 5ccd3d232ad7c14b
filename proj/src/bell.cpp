#include "finpart/bell.hpp"

#include <mutex>
#include <stdexcept>

namespace finpart {

BellTable bell_table(std::size_t max_n) {
  BellTable table;
  table.max_n = max_n;
  table.values.reserve(max_n + 1);
  std::vector<BigNat> row{1};
  table.values.push_back(1);
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::vector<BigNat> next;
    next.reserve(row.size() + 1);
    next.push_back(row.back());
    for (const auto& v : row) next.push_back(next.back() + v);
    row = std::move(next);
    table.values.push_back(row.front());
  }
  table.star_values.resize(max_n + 1);
  table.star_values[0] = 1;
  for (std::size_t n = 0; n < max_n; ++n) {
    table.star_values[n + 1] = table.values[n] - table.star_values[n];
  }
  return table;
}

std::shared_ptr<const BellTable> shared_bell_table(std::size_t max_n) {
  static std::mutex mutex;
  static std::shared_ptr<const BellTable> current;
  std::lock_guard lock(mutex);
  if (!current || current->max_n < max_n) {
    const std::size_t grow = current ? 2 * current->max_n : 128;
    current = std::make_shared<const BellTable>(bell_table(std::max(max_n, grow)));
  }
  return current;
}

BigNat bell(std::size_t n) { return shared_bell_table(n)->values[n]; }

BigNat bell_star(std::size_t n) { return shared_bell_table(n)->star_values[n]; }

std::vector<unsigned> bell_mod(std::size_t max_n, unsigned modulus) {
  if (modulus < 2) throw std::invalid_argument("modulus must be at least 2");
  std::vector<unsigned> out;
  out.reserve(max_n + 1);
  out.push_back(1 % modulus);
  std::vector<unsigned> row{1 % modulus};
  row.reserve(max_n + 1);
  std::vector<unsigned> next;
  next.reserve(max_n + 1);
  for (std::size_t n = 1; n <= max_n; ++n) {
    next.clear();
    next.push_back(row.back());
    for (unsigned v : row) next.push_back(static_cast<unsigned>((next.back() + static_cast<unsigned long long>(v)) % modulus));
    std::swap(row, next);
    out.push_back(row.front());
  }
  return out;
}

WitnessReport check_mod8_period(std::size_t max_n) {
  if (max_n < 24) throw std::invalid_argument("period check needs max_n >= 24");
  Stopwatch clock;
  WitnessReport report;
  report.name = "bell_mod8_period";
  report.params["max_n"] = max_n;
  const auto residues = bell_mod(max_n, 8);
  auto& check = report.add_check("B_{n+24} = B_n mod 8");
  for (std::size_t n = 0; n + 24 <= max_n; ++n) {
    ++check.instances;
    if (residues[n] != residues[n + 24] && check.passed) {
      check.passed = false;
      check.counterexample = Json{{"n", n}, {"B_n mod 8", residues[n]}, {"B_{n+24} mod 8", residues[n + 24]}};
    }
  }
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

namespace {

BigRat power_term(std::size_t k, std::size_t n, const BigNat& factorial) {
  BigNat num = boost::multiprecision::pow(BigNat(k), static_cast<unsigned>(n));
  return BigRat(num, factorial);
}

}  // namespace

DobinskiEstimate dobinski(std::size_t n, std::size_t terms) {
  if (terms == 0) throw std::invalid_argument("dobinski needs at least one term");
  BigRat sum = 0;
  BigRat inv_e = 0;
  BigNat factorial = 1;  // k!
  for (std::size_t k = 0; k < terms; ++k) {
    if (k > 0) factorial *= k;
    sum += power_term(k, n, factorial);
    BigRat unit(BigNat(1), factorial);
    if (k % 2 == 0) {
      inv_e += unit;
    } else {
      inv_e -= unit;
    }
  }
  // factorial == (terms-1)!; the alternating series error is at most 1/terms!.
  BigNat next_factorial = factorial * terms;
  const BigRat inv_e_error(BigNat(1), next_factorial);

  // Tail T = sum_{k >= terms} k^n/k!. Consecutive ratios
  // ((k+1)/k)^n / (k+1) decrease in k; once one is below 1/2 the rest of the
  // tail is bounded by a geometric series.
  BigRat tail = 0;
  std::size_t k = terms;
  BigNat kf = next_factorial;
  for (;;) {
    const BigRat base(BigNat(k + 1), BigNat(k));
    BigRat ratio = 1;
    for (std::size_t i = 0; i < n; ++i) ratio *= base;
    ratio /= BigRat(k + 1);
    const BigRat term = power_term(k, n, kf);
    if (ratio < BigRat(1, 2)) {
      tail += term / (BigRat(1) - ratio);
      break;
    }
    tail += term;
    ++k;
    kf *= k;
  }
  DobinskiEstimate est;
  est.approximation = sum * inv_e;
  // 1/e < 1/2
  est.error_bound = sum * inv_e_error + tail / 2;
  return est;
}

StarGapScan star_gap_scan(std::size_t max_n) {
  if (max_n < 23) throw std::invalid_argument("gap scan needs max_n >= 23");
  auto table = shared_bell_table(max_n);
  StarGapScan scan;
  bool found_min = false;
  for (std::size_t n = 0; n <= max_n; ++n) {
    const bool holds = pow2(2 * n + 2) < table->star_values[n];
    if (holds && !found_min) {
      scan.minimal_n = n;
      found_min = true;
    }
    if (n >= 23 && !holds) {
      scan.holds_from_23 = false;
      if (!scan.first_failure) scan.first_failure = n;
    }
  }
  if (!found_min) scan.minimal_n = max_n + 1;
  return scan;
}

WitnessReport not_power_of_two_scan(std::size_t max_n) {
  if (max_n < 3) throw std::invalid_argument("power-of-two scan needs max_n >= 3");
  Stopwatch clock;
  WitnessReport report;
  report.name = "bell_not_power_of_two";
  report.params["max_n"] = max_n;
  auto table = shared_bell_table(max_n);
  auto& check = report.add_check("B_m is not a power of two for m >= 3");
  for (std::size_t m = 3; m <= max_n; ++m) {
    ++check.instances;
    if (is_power_of_two(table->values[m]) && check.passed) {
      check.passed = false;
      check.counterexample = Json{{"m", m}};
    }
  }
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

void write_bell_csv(std::ostream& out, const BellTable& table) {
  out << "n,B_n,B_n_star\n";
  for (std::size_t n = 0; n <= table.max_n; ++n) {
    out << n << ',' << table.values[n] << ',' << table.star_values[n] << '\n';
  }
}

}  // namespace finpart
