#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "minmod/escape_grid.hpp"
#include "minmod/families.hpp"
#include "minmod/spec_io.hpp"

#include <fstream>
#include <random>

using namespace minmod;

namespace {

EntireFunctionSpec z_squared() {
    EntireFunctionSpec spec;
    spec.origin_power = 2;
    spec.zeros = ZeroSequence::make_list({});
    return spec;
}

std::vector<unsigned char> read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::vector<unsigned char>(std::istreambuf_iterator<char>(in),
                                      std::istreambuf_iterator<char>());
}

} // namespace

TEST_CASE("squaring schedule doubles in log space") {
    // M(r) = r^2: thresholds 2, 4, 16, 256
    const auto spec = z_squared();
    ScheduleParams sp;
    sp.base_r = 2.0;
    sp.steps = 3;
    const auto sched = build_schedule(spec, ScheduleKind::max_mod_power, sp);
    REQUIRE(sched.values.size() == 4);
    CHECK(sched.values[0] == std::log(2.0));
    CHECK(sched.values[1] == doctest::Approx(std::log(4.0)).epsilon(1e-15));
    CHECK(sched.values[2] == doctest::Approx(std::log(16.0)).epsilon(1e-15));
    CHECK(sched.values[3] == doctest::Approx(std::log(256.0)).epsilon(1e-15));
}

TEST_CASE("quite-fast schedule follows its recurrence") {
    const auto spec = z_squared();
    ScheduleParams sp;
    sp.base_r = 3.0;
    sp.steps = 5;
    sp.epsilon = 0.75;
    const auto sched = build_schedule(spec, ScheduleKind::quite_fast, sp);
    for (std::size_t n = 0; n + 1 < sched.values.size(); ++n) {
        const double expect = sp.epsilon * circle_max_log(spec, sched.values[n]);
        CHECK(sched.values[n + 1] == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("ring-set schedule is nondecreasing with a tight inverse") {
    const auto zc = make_family(FamilyId::z_cos_sqrt());
    ScheduleParams sp;
    sp.base_r = 94.10536944896889; // escaping witness seed
    sp.steps = 5;
    sp.n_shift = 1;
    const auto sched = build_schedule(zc, ScheduleKind::min_mod_iter_cube, sp);
    REQUIRE(sched.values.size() == 6);
    for (std::size_t n = 0; n + 1 < sched.values.size(); ++n)
        CHECK(sched.values[n + 1] >= sched.values[n] - 1e-9);
    // the inverse of log M lands back on its target
    for (double v : sched.values) {
        const double y = circle_max_log(zc, v);
        const double back = log_max_modulus_inverse(zc, y);
        CHECK(back == doctest::Approx(v).epsilon(1e-6));
    }
}

TEST_CASE("schedules below the fixed point are rejected") {
    const auto cs = make_family(FamilyId::cos_sqrt());
    ScheduleParams sp;
    sp.base_r = 10.0;
    CHECK_THROWS_AS((void)build_schedule(cs, ScheduleKind::tilde_min_iter, sp),
                    BelowFixedPoint);
    CHECK_THROWS_AS((void)build_schedule(cs, ScheduleKind::min_mod_iter_cube, sp),
                    BelowFixedPoint);
    ScheduleParams qs;
    qs.base_r = 3.0;
    qs.epsilon = 0.4; // mu_eps(r) = r^{0.8} < r
    CHECK_THROWS_AS((void)build_schedule(z_squared(), ScheduleKind::quite_fast, qs),
                    BelowFixedPoint);
}

TEST_CASE("squaring grid classification is radial") {
    const auto spec = z_squared();
    ScheduleParams sp;
    sp.base_r = 2.0;
    sp.steps = 8;
    const auto sched = build_schedule(spec, ScheduleKind::max_mod_power, sp);
    GridRect rect{-3.0, 3.0, -3.0, 3.0, 16, 16};
    const auto grid = render_escape(spec, rect, sched, 8);
    for (int iy = 0; iy < rect.height; ++iy) {
        for (int ix = 0; ix < rect.width; ++ix) {
            const double x = rect.re_min + (ix + 0.5) * 6.0 / 16;
            const double y = rect.im_max - (iy + 0.5) * 6.0 / 16;
            const double r = std::hypot(x, y);
            const int s = grid.survived[grid.index(ix, iy)];
            if (r > 2.0) CHECK(s == 8);
            if (r < 1.0) CHECK(s <= 1);
        }
    }
}

TEST_CASE("a schedule starting above the rectangle kills every pixel") {
    const auto spec = z_squared();
    ThresholdSchedule sched;
    sched.kind = ScheduleKind::custom;
    sched.values = {std::log(1e9), std::log(1e9)};
    const auto grid = render_escape(spec, {-3, 3, -3, 3, 8, 8}, sched, 2);
    for (int s : grid.survived) CHECK(s == 0);
}

TEST_CASE("graymap scaling of a two-by-two grid") {
    EscapeGrid grid;
    grid.rect = {0, 1, 0, 1, 2, 2};
    grid.max_iter = 3;
    grid.survived = {0, 1, 2, 3};
    grid.final_log_mod = {0, 0, 0, 0};
    const auto bytes = grid_pgm_bytes(grid);
    const std::string header(bytes.begin(), bytes.begin() + 9);
    CHECK(header == "P5\n2 2\n25"); // "P5\n2 2\n255\n" prefix
    REQUIRE(bytes.size() == 11 + 4);
    CHECK(bytes[11] == 0);
    CHECK(bytes[12] == 85);
    CHECK(bytes[13] == 170);
    CHECK(bytes[14] == 255);
}

TEST_CASE("empty grids are rejected") {
    const auto spec = z_squared();
    ThresholdSchedule sched;
    sched.kind = ScheduleKind::custom;
    sched.values = {0.0};
    CHECK_THROWS_AS((void)render_escape(spec, {-1, 1, -1, 1, 0, 4}, sched, 1),
                    ParameterOutOfRange);
    EscapeGrid empty;
    CHECK_THROWS_AS(export_grid_pgm(empty, "/tmp/minmod_empty.pgm"), ParameterOutOfRange);
}

TEST_CASE("golden squaring render is byte identical") {
    const auto spec = z_squared();
    ScheduleParams sp;
    sp.base_r = 2.0;
    sp.steps = 8;
    const auto sched = build_schedule(spec, ScheduleKind::max_mod_power, sp);
    const auto grid = render_escape(spec, {-3, 3, -3, 3, 64, 64}, sched, 8);
    const auto golden = read_bytes(std::string(TEST_GOLDEN_DIR) + "/z2_64.pgm");
    CHECK(grid_pgm_bytes(grid) == golden);
}

TEST_CASE("golden ring-set render is byte identical across modes and thread caps") {
    const auto zc = make_family(FamilyId::z_cos_sqrt());
    ScheduleParams sp;
    sp.base_r = 94.10536944896889;
    sp.steps = 6;
    sp.n_shift = 1;
    const auto sched = build_schedule(zc, ScheduleKind::min_mod_iter_cube, sp);
    const auto golden = read_bytes(std::string(TEST_GOLDEN_DIR) + "/zcos_in_64.pgm");

    const GridRect rect{-50, 50, -50, 50, 64, 64};
    const auto parallel = render_escape(zc, rect, sched, 6, 1e-9, par::Mode::openmp);
    CHECK(grid_pgm_bytes(parallel) == golden);

    par::set_thread_cap(1);
    const auto single = render_escape(zc, rect, sched, 6, 1e-9, par::Mode::openmp);
    par::set_thread_cap(0);
    CHECK(grid_pgm_bytes(single) == golden);

    const auto serial = render_escape(zc, rect, sched, 6, 1e-9, par::Mode::serial);
    CHECK(grid_pgm_bytes(serial) == golden);
}

TEST_CASE("raising thresholds never increases survival") {
    const auto zc = make_family(FamilyId::z_cos_sqrt());
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> base(0.5, 4.0), lift(0.0, 2.0);
    const GridRect rect{-30, 30, -30, 30, 12, 12};
    for (int pair = 0; pair < 10; ++pair) {
        ThresholdSchedule lo, hi;
        lo.kind = hi.kind = ScheduleKind::custom;
        double v = base(rng);
        for (int n = 0; n < 6; ++n) {
            lo.values.push_back(v);
            hi.values.push_back(v + lift(rng));
            v += base(rng);
        }
        const auto g_lo = render_escape(zc, rect, lo, 6);
        const auto g_hi = render_escape(zc, rect, hi, 6);
        for (std::size_t p = 0; p < g_lo.survived.size(); ++p)
            CHECK(g_hi.survived[p] <= g_lo.survived[p]);
    }
}

TEST_CASE("offset shifts the test to the later iterate") {
    const auto zc = make_family(FamilyId::z_cos_sqrt());
    ThresholdSchedule base;
    base.kind = ScheduleKind::custom;
    base.values = {2.0, 2.5, 3.0, 3.5};
    ThresholdSchedule shifted = base;
    shifted.offset = 2;

    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> coord(-40.0, 40.0);
    int checked = 0;
    for (int it = 0; it < 200 && checked < 100; ++it) {
        const double x = coord(rng), y = coord(rng);
        const GridRect pixel{x - 0.5, x + 0.5, y - 0.5, y + 0.5, 1, 1};
        const auto with_offset = render_escape(zc, pixel, shifted, 6);
        if (with_offset.survived[0] < 6) continue; // only surviving pixels
        ++checked;
        // its second iterate must survive the unshifted schedule
        LogComplex z{0.5 * std::log(x * x + y * y), std::atan2(y, x)};
        for (int n = 0; n < 2; ++n) z = eval_log_polar(zc, z.log_mod, z.arg, 1e-9);
        const double zx = std::exp(z.log_mod) * std::cos(z.arg);
        const double zy = std::exp(z.log_mod) * std::sin(z.arg);
        const GridRect image_pixel{zx - 0.5, zx + 0.5, zy - 0.5, zy + 0.5, 1, 1};
        const auto unshifted = render_escape(zc, image_pixel, base, 4);
        CHECK(unshifted.survived[0] == 4);
    }
    CHECK(checked >= 50);
}

TEST_CASE("grid CSV export") {
    const auto spec = z_squared();
    ThresholdSchedule sched;
    sched.kind = ScheduleKind::custom;
    sched.values = {0.0, 0.5};
    const auto grid = render_escape(spec, {-1, 1, -1, 1, 4, 4}, sched, 2);
    const std::string path = "/tmp/minmod_grid_test.csv";
    export_grid_csv(grid, path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,y,survived_steps,final_log_modulus");
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == 16);
}
