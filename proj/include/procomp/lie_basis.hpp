#ifndef PROCOMP_LIE_BASIS_HPP
#define PROCOMP_LIE_BASIS_HPP

#include <array>
#include <vector>

#include "procomp/word_algebra.hpp"

namespace procomp {

// Coefficients k_{n,l} of a series in the graded Lie basis, for all grades
// n <= 7. residual is the worst relative projection remainder over grades:
// max_n ||slice_n - span_n|| / (1 + ||slice_n||).
struct KernelSeries {
    std::array<std::vector<double>, kMaxGrade + 1> coeffs;  // coeffs[n] has dim(n) entries
    double residual = 0.0;

    double k(int n, int l) const;  // 1-based l, as in k_{n,l}
};

// The fixed basis E_{n,j} of the graded free Lie algebra on Y_1..Y_7:
//   E_{1,1}=Y1  E_{2,1}=Y2  E_{3,1}=Y3  E_{3,2}=[Y1,Y2]
//   E_{4,1}=Y4  E_{4,2}=[Y1,Y3]  E_{4,3}=[Y1,E_{3,2}]
//   E_{5,1}=Y5  E_{5,2}=[Y1,Y4]  E_{5,3}=[Y1,E_{4,2}]  E_{5,4}=[Y1,E_{4,3}]
//   E_{5,5}=[Y2,Y3]  E_{5,6}=[Y2,E_{3,2}]
//   E_{6,1}=Y6  E_{6,2}=[Y1,Y5]  E_{6,2+i}=[Y1,E_{5,1+i}] for i=1..5 shifted as below
//   ... through grade 7 (see the constructor for the full recursion).
// Dimensions per grade: 1, 1, 2, 3, 6, 9, 18.
class LieBasis {
  public:
    static const LieBasis& instance();

    int dimension(int grade) const;
    const GradedPolynomial& expansion(int grade, int index) const;  // 1-based index

    // Least-squares projection of each grade slice onto the basis span.
    // Throws std::logic_error if the cached basis matrices are rank deficient.
    KernelSeries project(const GradedPolynomial& logp) const;

    // sum over n,j of k_{n,j} * expansion(n,j)
    GradedPolynomial combine(const KernelSeries& k) const;

  private:
    LieBasis();
    struct GradeData;
    std::array<std::vector<GradedPolynomial>, kMaxGrade + 1> basis_;
    std::vector<GradeData> grade_data_;
};

}  // namespace procomp

#endif
