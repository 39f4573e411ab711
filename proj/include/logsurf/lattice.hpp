#pragma once

// Exact intersection-lattice arithmetic: the bilinear pairing, adjunction,
// negative-definiteness and class equality. Class equality is the model's
// notion of numerical / Q-linear equivalence, valid because the stored Gram
// matrix is required to be nondegenerate.

#include <string>
#include <vector>

#include "logsurf/linalg.hpp"

namespace logsurf {

struct DivisorClass {
    QVector coeffs;

    DivisorClass() = default;
    explicit DivisorClass(QVector c) : coeffs(std::move(c)) {}
    static DivisorClass zero(std::size_t rank) { return DivisorClass(QVector(rank, Rational(0))); }

    std::size_t rank() const { return coeffs.size(); }
    bool is_zero() const {
        for (const auto& c : coeffs) if (c != 0) return false;
        return true;
    }
    bool is_integral() const {
        for (const auto& c : coeffs) if (denominator(c) != 1) return false;
        return true;
    }

    DivisorClass& operator+=(const DivisorClass& o) {
        if (o.rank() != rank()) throw DimensionError("class rank mismatch in +");
        for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
        return *this;
    }
    DivisorClass& operator-=(const DivisorClass& o) {
        if (o.rank() != rank()) throw DimensionError("class rank mismatch in -");
        for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
        return *this;
    }
    DivisorClass& operator*=(const Rational& s) {
        for (auto& c : coeffs) c *= s;
        return *this;
    }
    friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
    friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
    friend DivisorClass operator*(const Rational& s, DivisorClass a) { return a *= s; }
    friend bool operator==(const DivisorClass& a, const DivisorClass& b) {
        if (a.rank() != b.rank()) throw DimensionError("class rank mismatch in ==");
        return a.coeffs == b.coeffs;
    }
};

struct IntersectionLattice {
    std::vector<std::string> basis_names;
    ZMatrix gram;       // symmetric, nondegenerate
    ZVector canonical;  // class of K in this basis

    std::size_t rank() const { return basis_names.size(); }

    void check_well_formed() const {
        const std::size_t n = rank();
        if (gram.size() != n) throw ValidationError("gram row count != rank");
        for (const auto& row : gram)
            if (row.size() != n) throw ValidationError("gram is not square");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (gram[i][j] != gram[j][i]) throw ValidationError("gram is not symmetric");
        if (canonical.size() != n) throw ValidationError("canonical length != rank");
        if (n > 0) {
            QMatrix g = qmatrix(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) g[i][j] = Rational(gram[i][j]);
            if (det(std::move(g)) == 0) throw ValidationError("gram is degenerate");
        }
    }

    DivisorClass canonical_class() const {
        QVector c(rank());
        for (std::size_t i = 0; i < rank(); ++i) c[i] = Rational(canonical[i]);
        return DivisorClass(std::move(c));
    }

    DivisorClass from_integers(const ZVector& v) const {
        if (v.size() != rank()) throw DimensionError("vector length != rank");
        QVector c(rank());
        for (std::size_t i = 0; i < rank(); ++i) c[i] = Rational(v[i]);
        return DivisorClass(std::move(c));
    }

    Rational pairing(const DivisorClass& x, const DivisorClass& y) const {
        if (x.rank() != rank() || y.rank() != rank())
            throw DimensionError("pairing: class rank does not match lattice rank");
        Rational acc(0);
        for (std::size_t i = 0; i < rank(); ++i) {
            if (x.coeffs[i] == 0) continue;
            Rational row(0);
            for (std::size_t j = 0; j < rank(); ++j)
                if (y.coeffs[j] != 0) row += Rational(gram[i][j]) * y.coeffs[j];
            acc += x.coeffs[i] * row;
        }
        return acc;
    }

    Rational self_intersection(const DivisorClass& x) const { return pairing(x, x); }

    /// Arithmetic genus by adjunction: (c^2 + K.c)/2 + 1.
    Rational adjunction_pa(const DivisorClass& c) const {
        return (pairing(c, c) + pairing(canonical_class(), c)) / 2 + 1;
    }

    bool classes_equal(const DivisorClass& x, const DivisorClass& y) const {
        if (x.rank() != rank() || y.rank() != rank())
            throw DimensionError("classes_equal: rank mismatch");
        return x == y;
    }

    /// Gram submatrix of a list of classes.
    QMatrix gram_of(const std::vector<DivisorClass>& classes) const {
        QMatrix m = qmatrix(classes.size(), classes.size());
        for (std::size_t i = 0; i < classes.size(); ++i)
            for (std::size_t j = i; j < classes.size(); ++j)
                m[i][j] = m[j][i] = pairing(classes[i], classes[j]);
        return m;
    }

    bool is_negative_definite(const std::vector<DivisorClass>& classes) const {
        return negative_definite(gram_of(classes));
    }
};

} // namespace logsurf
