#include "gave/linear_operator.hpp"

#include <string>

#include "gave/errors.hpp"

namespace gave {

LinearOperator::LinearOperator(DenseMatrix m) {
    if (!m.is_square())
        throw NonSquare("operator matrix must be square, got " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()));
    n_ = m.rows();
    plain_ = std::move(m);
}

LinearOperator LinearOperator::identity(std::size_t n, double scale) {
    return LinearOperator(DenseMatrix::identity(n, scale));
}

LinearOperator LinearOperator::zero(std::size_t n) {
    return LinearOperator(DenseMatrix::banded(n, 0, 0));
}

LinearOperator LinearOperator::inverse_of(const DenseMatrix& k, double scale) {
    LinearOperator op = zero(k.rows());
    Term t;
    t.scale = scale;
    t.k = std::make_shared<const DenseMatrix>(k);
    t.lu = std::make_shared<const LuFactorization>(k);
    op.terms_.push_back(std::move(t));
    return op;
}

LinearOperator LinearOperator::inverse_times(const DenseMatrix& k, const DenseMatrix& p,
                                             double scale) {
    if (p.rows() != k.rows() || !p.is_square())
        throw DimensionMismatch("inverse_times operands differ in size");
    LinearOperator op = inverse_of(k, scale);
    op.terms_.back().p = std::make_shared<const DenseMatrix>(p);
    return op;
}

Vector LinearOperator::apply(const Vector& x) const {
    Vector y = plain_ * x;
    for (const Term& t : terms_) {
        Vector w = t.p ? *t.p * x : x;
        t.lu->solve_in_place(w);
        axpy(t.scale, w, y);
    }
    return y;
}

DenseMatrix LinearOperator::to_matrix() const {
    if (terms_.empty()) return plain_;
    DenseMatrix m = plain_.to_full();
    for (const Term& t : terms_) {
        DenseMatrix w = t.lu->solve(t.p ? *t.p : DenseMatrix::identity(n_));
        m = m + t.scale * std::move(w);
    }
    return m;
}

LinearOperator::Inverse LinearOperator::inverse() const {
    Inverse inv;
    inv.n_ = n_;
    if (terms_.size() == 1 && plain_.max_abs() == 0.0) {
        // (s K^{-1} P)^{-1} = s^{-1} P^{-1} K
        const Term& t = terms_.front();
        if (t.scale == 0.0) throw SingularMatrix("zero multiple of an inverse is singular");
        inv.scale_ = 1.0 / t.scale;
        inv.pre_ = t.k;
        if (t.p) inv.lu_ = std::make_shared<const LuFactorization>(*t.p);
        return inv;
    }
    inv.lu_ = std::make_shared<const LuFactorization>(to_matrix());
    return inv;
}

Vector LinearOperator::Inverse::apply(const Vector& x) const {
    Vector w = pre_ ? *pre_ * x : x;
    if (lu_) lu_->solve_in_place(w);
    if (scale_ != 1.0) w *= scale_;
    return w;
}

DenseMatrix LinearOperator::Inverse::apply(const DenseMatrix& rhs) const {
    if (rhs.rows() != n_) throw DimensionMismatch("inverse applied to wrong row count");
    DenseMatrix w = pre_ ? *pre_ * rhs : rhs.to_full();
    if (lu_) w = lu_->solve(w);
    if (scale_ != 1.0) w *= scale_;
    return w.to_full();
}

LinearOperator operator+(const LinearOperator& a, const LinearOperator& b) {
    if (a.n_ != b.n_) throw DimensionMismatch("operator sum of different sizes");
    LinearOperator r;
    r.n_ = a.n_;
    r.plain_ = a.plain_ + b.plain_;
    r.terms_ = a.terms_;
    r.terms_.insert(r.terms_.end(), b.terms_.begin(), b.terms_.end());
    return r;
}

LinearOperator operator*(double s, LinearOperator a) {
    a.plain_ *= s;
    for (auto& t : a.terms_) t.scale *= s;
    return a;
}

LinearOperator operator-(const LinearOperator& a) { return -1.0 * a; }
LinearOperator operator-(const LinearOperator& a, const LinearOperator& b) { return a + (-b); }

}  // namespace gave
