#include <doctest.h>

#include <random>

#include "puncture/appendix.hpp"
#include "puncture/linalg.hpp"

using namespace puncture;

namespace {

// independent oracle: naive triple-loop product
Matrix naive_product(const Matrix& a, const Matrix& b) {
    Matrix r(a.field(), a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            Scalar acc = Scalar::zero(a.field());
            for (int k = 0; k < a.cols(); ++k) acc = acc + a.at(i, k) * b.at(k, j);
            r.at(i, j) = acc;
        }
    return r;
}

Matrix random_matrix(const Field& f, int rows, int cols, std::mt19937_64& rng, int lo = -9, int hi = 9) {
    std::uniform_int_distribution<int> dist(lo, hi);
    Matrix m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = Scalar(f, dist(rng));
    return m;
}

GradedSpace one_degree_space(const DegreeWindow& w, int degree, int dim) {
    GradedSpace s(w);
    s.set_dim(degree, dim);
    return s;
}

} // namespace

TEST_CASE("graded map composition matches the naive product oracle") {
    std::mt19937_64 rng(42);
    Field f5 = Field::prime(5);
    DegreeWindow w(0, 2);
    GradedSpace s = one_degree_space(w, 0, 3), t = one_degree_space(w, 0, 3);

    for (int trial = 0; trial < 20; ++trial) {
        Matrix a = random_matrix(f5, 3, 3, rng), b = random_matrix(f5, 3, 3, rng);
        GradedMap fm(f5, s, t, 0), gm(f5, t, t, 0);
        fm.set_block(0, b);
        gm.set_block(0, a);
        CHECK(compose(gm, fm).block(0) == naive_product(a, b));
    }

    GradedMap id = GradedMap::identity(f5, s);
    GradedMap fmap(f5, s, t, 0);
    fmap.set_block(0, random_matrix(f5, 3, 3, rng));
    CHECK(compose(id, fmap) == fmap);
    CHECK(compose(fmap, id) == fmap);
    GradedMap zero = GradedMap::zero(f5, t, t, 0);
    CHECK(compose(zero, fmap).is_zero());
}

TEST_CASE("composition errors name the offending degree") {
    Field q = Field::rationals();
    DegreeWindow w(0, 2);
    GradedSpace a = one_degree_space(w, 0, 2);
    GradedSpace b = one_degree_space(w, 1, 2);
    GradedMap f1(q, a, a, 0), f2(q, b, b, 0);
    CHECK_THROWS_WITH_AS(compose(f2, f1), doctest::Contains("degree 0"), StructuralError);
}

TEST_CASE("compose is associative on compatible triples") {
    std::mt19937_64 rng(7);
    for (const Field& f : {Field::rationals(), Field::prime(10007)}) {
        DegreeWindow w(-1, 3);
        GradedSpace s(w);
        for (int d = -1; d <= 3; ++d) s.set_dim(d, 2);
        auto rand_map = [&](int shift) {
            GradedMap m(f, s, s, shift);
            for (int d = -1; d <= 3; ++d)
                if (w.contains(d + shift)) m.set_block(d, random_matrix(f, 2, 2, rng));
            return m;
        };
        GradedMap a = rand_map(1), b = rand_map(0), c = rand_map(-1);
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    }
}

TEST_CASE("kernel_image on identity and zero maps") {
    Field q = Field::rationals();
    DegreeWindow w(0, 3);
    GradedSpace s(w);
    for (int d = 0; d <= 3; ++d) s.set_dim(d, d + 1);
    GradedMap id = GradedMap::identity(q, s);
    KernelImage ki = kernel_image(id);
    for (int d = 0; d <= 3; ++d) {
        CHECK(ki.kernel.dim(d) == 0);
        CHECK(ki.image.dim(d) == s.dim(d));
    }
    GradedMap z = GradedMap::zero(q, s, s, 0);
    KernelImage kz = kernel_image(z);
    for (int d = 0; d <= 3; ++d) {
        CHECK(kz.kernel.dim(d) == s.dim(d));
        CHECK(kz.image.dim(d) == 0);
    }
}

TEST_CASE("ranks agree over Q and over several primes >= 10007") {
    // field-agnosticism of integer matrices, checked at 3 primes
    std::mt19937_64 rng(2024);
    const std::uint64_t primes[] = {10007, 65537, 104729};
    for (int trial = 0; trial < 12; ++trial) {
        Field q = Field::rationals();
        Matrix mq = random_matrix(q, 5, 7, rng, -6, 6);
        int rq = rank(mq);
        for (std::uint64_t p : primes) {
            Field fp = Field::prime(p);
            Matrix mp(fp, 5, 7);
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 7; ++j)
                    mp.at(i, j) = Scalar::from_mpq(fp, mq.at(i, j).rational());
            CHECK(rank(mp) == rq);
        }
    }
}

TEST_CASE("appendix-b dual block rank: fraction-free over Q vs reduction mod p") {
    // the degree-3 block of the dual map at truncation N=4
    Field q = Field::rationals();
    TruncatedResolution res = build_resolution(4, 6, q);
    Complex dual = dualize(res);
    DegreeWindow w(0, 6);
    GradedMap dstar = realize_morphism_flat(dual.diff(0), w);
    Matrix block = dstar.block(3);
    CHECK(block.rows() == 4);
    CHECK(block.cols() == 4);
    int rq = rank(block);
    for (std::uint64_t p : {10007ull, 65537ull, 104729ull}) {
        Field fp = Field::prime(p);
        Matrix bp(fp, block.rows(), block.cols());
        for (int i = 0; i < block.rows(); ++i)
            for (int j = 0; j < block.cols(); ++j) bp.at(i, j) = Scalar::from_mpq(fp, block.at(i, j).rational());
        CHECK(rank(bp) == rq);
    }
    CHECK(rq == 4); // unitriangular after ordering, hence full rank
}

TEST_CASE("solve_linear finds solutions and detects inconsistency") {
    Field q = Field::rationals();
    Matrix a(q, 2, 2);
    a.at(0, 0) = Scalar(q, 1);
    a.at(0, 1) = Scalar(q, 2);
    a.at(1, 0) = Scalar(q, 2);
    a.at(1, 1) = Scalar(q, 4);
    Matrix b(q, 2, 1);
    b.at(0, 0) = Scalar(q, 1);
    b.at(1, 0) = Scalar(q, 2);
    auto sol = solve_linear(a, b);
    REQUIRE(sol);
    CHECK((a * *sol) == b);

    b.at(1, 0) = Scalar(q, 3); // now inconsistent
    CHECK(!solve_linear(a, b));
}

TEST_CASE("kernel basis vectors actually span the kernel") {
    std::mt19937_64 rng(99);
    for (const Field& f : {Field::rationals(), Field::prime(65537)}) {
        for (int trial = 0; trial < 10; ++trial) {
            Matrix m = random_matrix(f, 4, 6, rng);
            Matrix kb = kernel_basis(m);
            CHECK(kb.cols() == 6 - rank(m));
            CHECK((m * kb).is_zero());
            CHECK(rank(kb) == kb.cols());
        }
    }
}

TEST_CASE("homology_at computes middle homology with representatives") {
    Field q = Field::rationals();
    DegreeWindow w(0, 0);
    GradedSpace mid = one_degree_space(w, 0, 3);
    GradedSpace src = one_degree_space(w, 0, 1);
    GradedSpace tgt = one_degree_space(w, 0, 1);

    SUBCASE("zero maps give the whole middle space") {
        GradedMap fin = GradedMap::zero(q, src, mid, 0);
        GradedMap fout = GradedMap::zero(q, mid, tgt, 0);
        Homology h = homology_at(fin, fout);
        CHECK(h.dims.dim(0) == 3);
    }

    SUBCASE("surjection onto the kernel kills homology") {
        GradedSpace big = one_degree_space(w, 0, 3);
        GradedMap fin(q, big, mid, 0);
        Matrix inb(q, 3, 3);
        inb.at(0, 0) = Scalar(q, 1);
        inb.at(1, 1) = Scalar(q, 1); // image = ker(fout) below
        fin.set_block(0, inb);
        GradedMap fout(q, mid, tgt, 0);
        Matrix outb(q, 1, 3);
        outb.at(0, 2) = Scalar(q, 1);
        fout.set_block(0, outb);
        Homology h = homology_at(fin, fout);
        CHECK(h.dims.dim(0) == 0);
    }

    SUBCASE("non-complexes are rejected with the failing degree") {
        GradedMap fin(q, src, mid, 0);
        Matrix inb(q, 3, 1);
        inb.at(0, 0) = Scalar(q, 1);
        fin.set_block(0, inb);
        GradedMap fout(q, mid, tgt, 0);
        Matrix outb(q, 1, 3);
        outb.at(0, 0) = Scalar(q, 1);
        fout.set_block(0, outb);
        CHECK_THROWS_WITH_AS(homology_at(fin, fout), doctest::Contains("not a complex at degree 0"), StructuralError);
    }
}

TEST_CASE("rank-nullity is enforced per degree") {
    std::mt19937_64 rng(5);
    Field f = Field::prime(10007);
    DegreeWindow w(-2, 2);
    GradedSpace s(w), t(w);
    for (int d = -2; d <= 2; ++d) {
        s.set_dim(d, 3);
        t.set_dim(d, 2);
    }
    GradedMap m(f, s, t, 1);
    for (int d = -2; d <= 1; ++d) m.set_block(d, random_matrix(f, 2, 3, rng));
    KernelImage ki = kernel_image(m);
    for (int d = -2; d <= 2; ++d) CHECK(ki.kernel.dim(d) + ki.image.dim(d + 1) == s.dim(d));
}
