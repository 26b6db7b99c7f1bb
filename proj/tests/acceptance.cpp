// Acceptance suite. Each criterion prints one PASS/FAIL line; run with a
// criterion number (1..10) or no argument for the full sweep. The exit code
// is the number of failed criteria.
//
// Criterion 1 compares the emitted tables against the published reference
// tables digit-for-digit. Three reference entries (the eta column at
// n = 10, 11, 12) are internally inconsistent with their own gamma/delta
// neighbors under the defining identity gamma + delta/e = eta and disagree
// with two independent rigorous routes at about 1e-17 relative error
// (double-precision artifacts in the source). Those three strings cannot be
// reproduced by a correct computation; the suite reports them as failures
// with the cross-check evidence rather than weakening the comparison.

#include <gec/asymptotics.hpp>
#include <gec/checks.hpp>
#include <gec/jacobian.hpp>
#include <gec/pascal.hpp>
#include <gec/poly_io.hpp>
#include <gec/quadrature.hpp>
#include <gec/tables.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace gec;

namespace {

// ---- published reference tables (thousands separators stripped) ----------

struct T1Row {
    const char* gamma;
    const char* delta;
    const char* eta;
};
struct T2Row {
    const char* delta_tilde;
    const char* eta_tilde;
};

const T1Row kTable1[16] = {
    {"1.0", "-1.0", "0.6321205588"},
    {"0.5772156649", "0.5963473623", "0.7965995992"},
    {"1.9781119906", "-0.5319307700", "1.7824255962"},
    {"5.4448744564", "0.5806819508", "5.6584954080"},
    {"23.5614740840", "-0.7222515339", "23.2957725933"},
    {"117.8394082683", "0.9875880596", "118.2027216118"},
    {"715.0673625273", "-1.4535032853", "714.5326485509"},
    {"5019.8488726298", "2.2708839827", "5020.6842841603"},
    {"40243.6215733357", "-3.7298791058", "40242.2494274946"},
    {"362526.2891146549", "6.3945118625", "362528.6415241055"},
    {"3627042.4127568947", "-11.3803468877", "3627038.2261612415"},
    {"39907084.1514313358", "20.9346984188", "39907091.8528764918"},
    {"478943291.7651829432", "-39.6671864816", "478943277.1724405288"},
    {"6226641351.5460642549", "77.1984745660", "6226641379.9457959376"},
    {"87175633810.7084156319", "-153.9437943882", "87175633754.0756585806"},
    {"1307654429495.7941762096", "313.9164765016", "1307654429611.2775941595"},
};

const T2Row kTable2[16] = {
    {"-7.3890560989", "-1.7182818285"},
    {"-5.1514643230", "-1.3179021515"},
    {"-11.6100810693", "-2.2929981451"},
    {"-32.2422478187", "-6.4163856532"},
    {"-131.4700021171", "-24.8036368256"},
    {"-651.8492520020", "-121.9625302861"},
    {"-3916.6763381264", "-725.7973399920"},
    {"-27400.1009939266", "-5060.0849690569"},
    {"-219211.5495238585", "-40399.8007638273"},
    {"-1972830.5386794810", "-363237.5069807080"},
    {"-19728269.2785592814", "-3630582.2647192273"},
    {"-217010407.4543390336", "-39926583.2712579089"},
    {"-2604123546.6077724787", "-479060223.3022788290"},
    {"-33853598434.1585762781", "-6227401522.0546076015"},
    {"-473950346279.9399036234", "-87180954721.7674533138"},
    {"-7109255026416.1913290094", "-1307694336767.4617097988"},
};

const char* kGoldenP2 =
    "# gec-poly-v1 normalization=primitive-positive-lead order=deg-asc-hivar-desc\n"
    "5 ; g4:1\n"
    "-20 ; g1:1 g3:1\n"
    "-27 ; g2:2\n"
    "84 ; g1:2 g2:1\n"
    "-42 ; g1:4\n";

const char* kGoldenP3 =
    "# gec-poly-v1 normalization=primitive-positive-lead order=deg-asc-hivar-desc\n"
    "7 ; g6:1\n"
    "-42 ; g1:1 g5:1\n"
    "-105 ; g2:1 g4:1\n"
    "-70 ; g3:2\n"
    "210 ; g1:2 g4:1\n"
    "840 ; g1:1 g2:1 g3:1\n"
    "18 ; g2:3\n"
    "-840 ; g1:3 g3:1\n"
    "-1314 ; g1:2 g2:2\n"
    "1944 ; g1:4 g2:1\n"
    "-648 ; g1:6\n";

// ---------------------------------------------------------------------------

struct Csv {
    // [n] -> cells
    std::vector<std::vector<std::string>> rows;
};

Csv read_csv(const fs::path& p) {
    Csv csv;
    std::ifstream in(p);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        csv.rows.push_back(std::move(cells));
    }
    return csv;
}

// golden matches when it is a truncation-consistent prefix of the emitted
// string (row 0 prints "1.0" in the source at coarser precision).
bool matches(const std::string& emitted, const std::string& golden) {
    if (emitted == golden) return true;
    return emitted.size() > golden.size() && emitted.compare(0, golden.size(), golden) == 0;
}

bool criterion1() {
    fs::path dir_t = fs::temp_directory_path() / "gec_acc_tables_trunc";
    fs::path dir_n = fs::temp_directory_path() / "gec_acc_tables_nearest";
    fs::remove_all(dir_t);
    fs::remove_all(dir_n);
    std::string cli = GEC_CLI_PATH;
    if (std::system((cli + " tables --n-max 15 --digits 10 --mode truncate --out-dir " +
                     dir_t.string() + " > /dev/null")
                        .c_str()) != 0)
        return false;
    if (std::system((cli + " tables --n-max 15 --digits 10 --mode nearest --out-dir " +
                     dir_n.string() + " > /dev/null")
                        .c_str()) != 0)
        return false;

    Csv trunc = read_csv(dir_t / "tables.csv");
    Csv nearest = read_csv(dir_n / "tables.csv");
    if (trunc.rows.size() != 16 || nearest.rows.size() != 16) {
        std::cout << "    table artifact has wrong row count\n";
        return false;
    }

    int mismatches = 0;
    auto expect = [&](const std::string& got, const std::string& want, long n,
                      const char* col) {
        if (!matches(got, want)) {
            ++mismatches;
            std::cout << "    mismatch n=" << n << " " << col << ": reference '" << want
                      << "' vs certified '" << got << "'\n";
        }
    };
    // first table renders by truncation, second by rounding to nearest
    for (long n = 0; n <= 15; ++n) {
        const auto& row = trunc.rows[static_cast<size_t>(n)];
        expect(row[1], kTable1[n].gamma, n, "gamma");
        expect(row[2], kTable1[n].delta, n, "delta");
        expect(row[3], kTable1[n].eta, n, "eta");
        const auto& rown = nearest.rows[static_cast<size_t>(n)];
        expect(rown[4], kTable2[n].delta_tilde, n, "delta_tilde");
        expect(rown[5], kTable2[n].eta_tilde, n, "eta_tilde");
    }
    if (mismatches > 0) {
        // cross-check the known-bad reference entries against identity (8)
        PrecisionConfig cfg(256);
        Interval e = enclose_e(cfg);
        for (long n : {10L, 11L, 12L}) {
            Interval eta_from_identity = gamma_n(n, cfg) + delta_n(n, cfg) / e;
            std::cout << "    identity cross-check n=" << n
                      << ": gamma+delta/e in " << eta_from_identity.brief()
                      << " (reference eta column disagrees beyond enclosure width)\n";
        }
        std::cout << "    " << (80 - mismatches) << "/80 reference strings reproduced\n";
        return false;
    }
    return true;
}

bool criterion2() {
    return poly_to_text(build_P(2)) == kGoldenP2 && poly_to_text(build_P(3)) == kGoldenP3;
}

bool criterion3() {
    PrecisionConfig cfg(192);
    CertifyOptions opt;
    opt.jobs = 4;
    auto recs = certify(10, cfg, opt);
    long expect = 0;
    for (long m = 2; m <= 10; ++m) expect += m + 2;
    if (recs.size() != static_cast<size_t>(expect)) {
        std::cout << "    expected " << expect << " records, got " << recs.size() << "\n";
        return false;
    }
    bool ok = true;
    for (const auto& r : recs)
        if (r.status != CertStatus::CertifiedNonzero) {
            std::cout << "    INDETERMINATE at m=" << r.m << " theta=" << r.theta.name()
                      << "\n";
            ok = false;
        }
    return ok;
}

bool criterion4() {
    for (long n = 2; n <= 20; ++n)
        for (auto theta : all_thetas(n)) {
            if (!(pascal_submatrix_det(n, theta) > 0)) return false;
            if (!lstp_index_check(n, theta).ok) return false;
        }
    for (long n = 2; n <= 6; ++n)
        for (auto theta : all_thetas(n)) {
            auto M = bell_jacobian_at_Kstar(n, theta);
            auto [rows, cols] = pascal_indices(n, theta);
            for (size_t i = 0; i < rows.size(); ++i)
                for (size_t j = 0; j < cols.size(); ++j)
                    if (M[i][j] != Rational(binomial(rows[i], cols[j]))) return false;
        }
    return true;
}

bool criterion5() {
    PrecisionConfig cfg(128);
    for (long n = 1; n <= 15; ++n) {
        Interval q = delta_n_quadrature(n, cfg);
        Interval ident = delta_n(n, cfg);
        if (!q.overlaps(ident)) {
            std::cout << "    routes disjoint at n=" << n << "\n";
            return false;
        }
        double w = Interval::hull(q, ident).width_double();
        if (!(w < 1e-8)) {
            std::cout << "    combined width " << w << " at n=" << n << "\n";
            return false;
        }
    }
    return true;
}

bool criterion6() {
    PrecisionConfig cfg(160);
    for (long n = 2; n <= 40; ++n)
        if (!eta_bracket_holds(n, cfg) || !eta_tilde_bracket_holds(n, cfg)) {
            std::cout << "    bracket failed at n=" << n << "\n";
            return false;
        }
    return true;
}

bool criterion7() {
    PrecisionConfig cfg(128);
    for (long k = 1; k <= 8; ++k) {
        Interval r = reflection_residual(k, cfg);
        if (!r.contains_zero() || !(r.width_double() < 1e-20)) {
            std::cout << "    k=" << k << " residual " << r.brief() << "\n";
            return false;
        }
    }
    return true;
}

bool criterion8() {
    PrecisionConfig cfg(128);
    for (long ell = 2; ell <= 5; ++ell) {
        Interval r = zeta_consistency(ell, cfg);
        if (!r.contains_zero() || !(r.width_double() < 1e-20)) {
            std::cout << "    ell=" << ell << " residual " << r.brief() << "\n";
            return false;
        }
    }
    return true;
}

bool criterion9() {
    PrecisionConfig cfg(128);
    double prev = 1e300;
    for (long n : {5L, 10L, 15L}) {
        Interval exact = delta_n(n, cfg).abs();
        double rel = relative_error(exact, delta_asym(n, cfg)).mid_double();
        if (!(rel < prev)) {
            std::cout << "    relative error not decreasing at n=" << n << "\n";
            return false;
        }
        prev = rel;
    }
    for (long n = 1; n <= 50; ++n) {
        try {
            saddle_point_diagnostics(n, cfg);
        } catch (const std::exception& e) {
            std::cout << "    diagnostics failed at n=" << n << ": " << e.what() << "\n";
            return false;
        }
    }
    return true;
}

bool criterion10() {
    PrecisionConfig cfg(256);
    for (long n = 2; n <= 8; ++n)
        if (!p_at_gamma_star(n, cfg).contains_zero()) {
            std::cout << "    P_" << n << " enclosure excludes 0\n";
            return false;
        }
    return true;
}

struct Criterion {
    int id;
    const char* what;
    bool (*fn)();
};

const Criterion kCriteria[] = {
    {1, "table reproduction (80 published digit strings, certified)", criterion1},
    {2, "exact polynomial goldens P_2, P_3", criterion2},
    {3, "Jacobian certification, all (m,theta) for n <= 10", criterion3},
    {4, "Pascal submatrix positivity, index condition, K* Jacobian", criterion4},
    {5, "independent quadrature vs identity route, n <= 15, width < 1e-8", criterion5},
    {6, "strict factorial-law brackets, 2 <= n <= 40", criterion6},
    {7, "reflection residuals contain 0, k <= 8, width < 1e-20", criterion7},
    {8, "zeta consistency, ell in 2..5, width < 1e-20", criterion8},
    {9, "saddle-point error trend and diagnostics", criterion9},
    {10, "P_n vanishes at the true moment point, 2 <= n <= 8", criterion10},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failures = 0;
    for (const auto& c : kCriteria) {
        if (only != 0 && c.id != only) continue;
        auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.fn();
        } catch (const std::exception& e) {
            std::cout << "    exception: " << e.what() << "\n";
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << c.id << ": " << c.what
                  << "  (" << secs << "s)\n";
        if (!ok) ++failures;
    }
    return failures;
}
