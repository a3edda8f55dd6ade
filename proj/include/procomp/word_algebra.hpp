#ifndef PROCOMP_WORD_ALGEBRA_HPP
#define PROCOMP_WORD_ALGEBRA_HPP

#include <array>
#include <span>
#include <string>
#include <vector>

namespace procomp {

// Truncation grade of the whole engine. Generators Y_k carry grade k, a word
// carries the sum of its letter grades, and every product is truncated past
// kMaxGrade. Grade 9 (or anything above 7) is rejected, not silently cut.
inline constexpr int kMaxGrade = 7;

// Total number of words of grade <= 7 over Y_1..Y_7, empty word included:
// 1 + 1 + 2 + 4 + 8 + 16 + 32 + 64.
inline constexpr int kWordCount = 128;

void require_grade_supported(int grade);

using WordId = int;

// Enumeration of all words of grade <= kMaxGrade, grouped by grade and
// ordered lexicographically within a grade. Id 0 is the empty word (the unit
// of the algebra). Built once, immutable afterwards.
class WordTable {
  public:
    static const WordTable& instance();

    int grade(WordId w) const { return grade_[w]; }
    const std::vector<int>& letters(WordId w) const { return letters_[w]; }

    // Concatenation of two words, or -1 if the grades overflow kMaxGrade.
    WordId product(WordId a, WordId b) const { return product_[a][b]; }

    // Ids of grade-n words occupy [grade_begin(n), grade_end(n)).
    int grade_begin(int n) const { return begin_[n]; }
    int grade_end(int n) const { return begin_[n + 1]; }
    int grade_size(int n) const { return begin_[n + 1] - begin_[n]; }

    WordId id_of(const std::vector<int>& letters) const;
    WordId generator(int k) const;  // the one-letter word Y_k

    std::string name(WordId w) const;

  private:
    WordTable();
    std::vector<std::vector<int>> letters_;
    std::array<int, kWordCount> grade_{};
    std::array<int, kMaxGrade + 2> begin_{};
    std::array<std::array<WordId, kWordCount>, kWordCount> product_{};
};

// Element of the word (tensor) algebra over Y_1..Y_7, truncated at grade 7.
// Coefficients are dense over the 128 admissible words; magnitudes below
// 1e-300 count as absent.
class GradedPolynomial {
  public:
    GradedPolynomial() : c_{} {}

    static GradedPolynomial zero() { return GradedPolynomial(); }
    static GradedPolynomial unit();
    static GradedPolynomial generator(int k);  // Y_k with coefficient 1

    double coeff(WordId w) const { return c_[w]; }
    double& coeff(WordId w) { return c_[w]; }
    double unit_coeff() const { return c_[0]; }

    GradedPolynomial& operator+=(const GradedPolynomial& o);
    GradedPolynomial& operator-=(const GradedPolynomial& o);
    GradedPolynomial& operator*=(double s);

    friend GradedPolynomial operator+(GradedPolynomial a, const GradedPolynomial& b) { return a += b; }
    friend GradedPolynomial operator-(GradedPolynomial a, const GradedPolynomial& b) { return a -= b; }
    friend GradedPolynomial operator*(GradedPolynomial a, double s) { return a *= s; }
    friend GradedPolynomial operator*(double s, GradedPolynomial a) { return a *= s; }

    bool is_zero(double tol = 1e-300) const;
    int term_count(double tol = 1e-300) const;

    // Largest |coefficient| difference against another polynomial.
    double max_abs_diff(const GradedPolynomial& o) const;
    double max_abs() const;

  private:
    std::array<double, kWordCount> c_;
};

// Truncated concatenation product; words past grade 7 are dropped.
GradedPolynomial poly_mul(const GradedPolynomial& a, const GradedPolynomial& b);

inline GradedPolynomial operator*(const GradedPolynomial& a, const GradedPolynomial& b) {
    return poly_mul(a, b);
}

GradedPolynomial commutator(const GradedPolynomial& a, const GradedPolynomial& b);

// exp of an element with no unit-word part; terminates after 7 powers.
GradedPolynomial exp_poly(const GradedPolynomial& x);

// log of an element with unit-word coefficient exactly 1.
GradedPolynomial log_poly(const GradedPolynomial& p);

enum class FactorKind { forward, adjoint };

// Series of one basic map raised to coefficient c:
//   forward  exp(Y(c))    with Y(c) = sum_k c^k Y_k,
//   adjoint  exp(-Y(-c)) = exp(sum_k (-1)^{k+1} c^k Y_k).
// The formal step h is absorbed into c via the grading.
GradedPolynomial factor_series(FactorKind kind, double c);

// log of the series of the composition chi*_{c1} , chi_{c2} , chi*_{c3} , ...
// (alternating, the adjoint factor with c1 applied first). Works for any
// length, even (kernels) or odd (processors).
GradedPolynomial composition_log(std::span<const double> coeffs);

}  // namespace procomp

#endif
