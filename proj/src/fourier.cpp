#include "circmap/fourier.hpp"

#include <cmath>
#include <numbers>

namespace circmap::fourier {

namespace {

std::vector<Complex> roots_of_unity(std::size_t n, double sign) {
  std::vector<Complex> table(n);
  for (std::size_t m = 0; m < n; ++m) {
    table[m] = std::polar(1.0, sign * 2.0 * std::numbers::pi * double(m) / double(n));
  }
  return table;
}

std::size_t wrap(long long k, std::size_t n) {
  long long r = k % static_cast<long long>(n);
  return static_cast<std::size_t>(r < 0 ? r + static_cast<long long>(n) : r);
}

}  // namespace

std::vector<Complex> coefficients(std::span<const Complex> samples) {
  const std::size_t n = samples.size();
  const auto table = roots_of_unity(n, -1.0);
  std::vector<Complex> c(n);
  const long long half = static_cast<long long>(n / 2);
  for (long long k = -half; k < static_cast<long long>(n) - half; ++k) {
    Complex acc{};
    for (std::size_t j = 0; j < n; ++j) acc += samples[j] * table[wrap(k * static_cast<long long>(j), n)];
    c[static_cast<std::size_t>(k + half)] = acc / double(n);
  }
  return c;
}

std::vector<Complex> interpolate(std::span<const Complex> samples, std::size_t count) {
  const std::size_t n = samples.size();
  const auto c = coefficients(samples);
  const auto table = roots_of_unity(count, 1.0);
  const long long half = static_cast<long long>(n / 2);
  std::vector<Complex> out(count);
  for (std::size_t j = 0; j < count; ++j) {
    Complex acc{};
    for (long long k = -half; k < static_cast<long long>(n) - half; ++k) {
      Complex ck = c[static_cast<std::size_t>(k + half)];
      if (n % 2 == 0 && k == -half) {
        // split the Nyquist mode symmetrically so real data stays real
        acc += 0.5 * ck * (table[wrap(k * static_cast<long long>(j), count)] +
                           table[wrap(-k * static_cast<long long>(j), count)]);
        continue;
      }
      acc += ck * table[wrap(k * static_cast<long long>(j), count)];
    }
    out[j] = acc;
  }
  return out;
}

std::vector<Complex> derivative(std::span<const Complex> samples) {
  const std::size_t n = samples.size();
  const auto c = coefficients(samples);
  const auto table = roots_of_unity(n, 1.0);
  const long long half = static_cast<long long>(n / 2);
  std::vector<Complex> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    Complex acc{};
    for (long long k = -half; k < static_cast<long long>(n) - half; ++k) {
      if (n % 2 == 0 && k == -half) continue;
      acc += Complex(0.0, double(k)) * c[static_cast<std::size_t>(k + half)] *
             table[wrap(k * static_cast<long long>(j), n)];
    }
    out[j] = acc;
  }
  return out;
}

}  // namespace circmap::fourier
