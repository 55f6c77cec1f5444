#pragma once

#include <memory>
#include <vector>

#include "gave/linalg.hpp"

namespace gave {

// A square operator of the form  P0 + sum_k s_k K_k^{-1} P_k  where P0 is an
// explicit (possibly banded) matrix and each K_k is factored once at
// construction. Presets that need B^{-1} (Q1 = k B^{-1}, H = c B^{-1} A) use the
// inverse terms so no explicit inverse is ever formed for the iteration.
class LinearOperator {
public:
    LinearOperator() = default;
    LinearOperator(DenseMatrix m);  // NOLINT: implicit on purpose

    static LinearOperator identity(std::size_t n, double scale = 1.0);
    static LinearOperator zero(std::size_t n);
    // scale * K^{-1}
    static LinearOperator inverse_of(const DenseMatrix& k, double scale = 1.0);
    // scale * K^{-1} P
    static LinearOperator inverse_times(const DenseMatrix& k, const DenseMatrix& p,
                                        double scale = 1.0);

    std::size_t dim() const { return n_; }
    bool has_inverse_terms() const { return !terms_.empty(); }
    const DenseMatrix& explicit_part() const { return plain_; }

    Vector apply(const Vector& x) const;
    // exact (banded) copy for explicit operators, dense otherwise
    DenseMatrix to_matrix() const;

    class Inverse {
    public:
        Vector apply(const Vector& x) const;
        DenseMatrix apply(const DenseMatrix& rhs) const;
        std::size_t dim() const { return n_; }

    private:
        friend class LinearOperator;
        std::size_t n_ = 0;
        double scale_ = 1.0;
        std::shared_ptr<const DenseMatrix> pre_;
        std::shared_ptr<const LuFactorization> lu_;
    };
    // throws SingularMatrix
    Inverse inverse() const;

    friend LinearOperator operator+(const LinearOperator& a, const LinearOperator& b);
    friend LinearOperator operator*(double s, LinearOperator a);

private:
    struct Term {
        double scale = 1.0;
        std::shared_ptr<const DenseMatrix> k;
        std::shared_ptr<const LuFactorization> lu;
        std::shared_ptr<const DenseMatrix> p;  // null means identity
    };

    std::size_t n_ = 0;
    DenseMatrix plain_;
    std::vector<Term> terms_;
};

LinearOperator operator-(const LinearOperator& a);
LinearOperator operator-(const LinearOperator& a, const LinearOperator& b);

}  // namespace gave
