#include <gtest/gtest.h>

#include <omp.h>

#include "oracles.hpp"
#include "qrepro/analysis.hpp"
#include "qrepro/errors.hpp"
#include "qrepro/search.hpp"
#include "qrepro/states.hpp"

using namespace qrepro;

namespace {

SearchConfig config(int restarts, std::uint64_t seed) {
    SearchConfig c;
    c.restarts = restarts;
    c.seed = seed;
    return c;
}

void expect_same(const SearchResult& a, const SearchResult& b) {
    EXPECT_EQ(a.best_residual, b.best_residual);
    EXPECT_EQ(a.best_restart, b.best_restart);
    EXPECT_EQ(a.converged, b.converged);
    EXPECT_EQ(a.restart_residuals, b.restart_residuals);
    EXPECT_EQ(a.best_assignment, b.best_assignment);
}

} // namespace

TEST(residual, examples) {
    EXPECT_NEAR(residual(make_state(StateKind::bell(), 2), bell_operators()), 0.0, 1e-15);
    EXPECT_NEAR(residual(make_state(StateKind::w(), 3), flip_operators(3)), 2.0 / 3.0, 1e-12);
    auto same = flip_operators(2);
    same[0].second = same[0].first;
    EXPECT_NEAR(residual(make_state(StateKind::bell(), 2), same), 1.0, 1e-12);
}

TEST(search_operators, ghz4_converges_to_sound_witness) {
    const auto ghz = make_state(StateKind::ghz(), 4);
    const auto r = search_operators(ghz, config(32, 7));
    ASSERT_TRUE(r.converged);
    EXPECT_LT(r.best_residual, 1e-6);
    EXPECT_EQ(r.restart_residuals.size(), 32u);
    const auto rep = check_distinguishability(ghz, r.best_assignment, 1e-5);
    EXPECT_TRUE(rep.pass);
    for (const auto& s : rep.spectra)
        EXPECT_TRUE(s.ok);
    for (const auto& p : r.best_assignment.pairs())
        EXPECT_EQ(p.first, LocalUnitary());
}

TEST(search_operators, dicke42_converges) {
    const auto d = make_state(StateKind::dicke(2), 4);
    const auto r = search_operators(d, config(64, 0));
    ASSERT_TRUE(r.converged);
    EXPECT_TRUE(check_distinguishability(d, r.best_assignment, 1e-5).pass);
}

TEST(search_operators, w3_finds_no_witness) {
    const auto r = search_operators(make_state(StateKind::w(), 3), config(200, 42));
    EXPECT_FALSE(r.converged);
    EXPECT_GT(r.best_residual, 1e-3);
    for (double x : r.restart_residuals)
        EXPECT_GE(x, r.best_residual);
}

TEST(search_operators, deterministic_across_thread_counts_and_exec_modes) {
    const auto s = make_state(StateKind::dicke(1), 3);
    auto c = config(12, 99);
    c.max_iters = 300;
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const auto one = search_operators(s, c);
    omp_set_num_threads(4);
    const auto four = search_operators(s, c);
    omp_set_num_threads(saved);
    c.exec = Exec::serial;
    const auto serial = search_operators(s, c);
    expect_same(one, four);
    expect_same(one, serial);
}

TEST(search_operators, different_seeds_differ) {
    const auto s = make_state(StateKind::w(), 3);
    auto a = config(4, 1), b = config(4, 2);
    a.max_iters = b.max_iters = 50;
    EXPECT_NE(search_operators(s, a).restart_residuals, search_operators(s, b).restart_residuals);
}

TEST(search_operators, gauge_fixed_matches_free_search) {
    std::mt19937_64 rng(61);
    std::vector<PureState> states{make_state(StateKind::bell(), 2), make_state(StateKind::ghz(), 3),
                                  make_state(StateKind::w(), 3)};
    for (const auto& s : states) {
        auto g = config(24, 5), f = config(24, 5);
        f.gauge_fixed = false;
        const auto rg = search_operators(s, g), rf = search_operators(s, f);
        EXPECT_EQ(rg.converged, rf.converged);
        if (rg.converged)
            continue;
        EXPECT_NEAR(rg.best_residual, rf.best_residual, 1e-6);
    }
}

TEST(search_operators, rejects_bad_config) {
    const auto s = make_state(StateKind::bell(), 2);
    EXPECT_THROW(search_operators(s, config(0, 0)), ValidationError);
    auto c = config(1, 0);
    c.tol = 0;
    EXPECT_THROW(search_operators(s, c), ValidationError);
    c = config(1, 0);
    c.shrink = 1.0;
    EXPECT_THROW(search_operators(s, c), ValidationError);
}
