// Acceptance run: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ddlab/dofs.hpp"
#include "ddlab/suite.hpp"

using namespace ddlab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

double metric_double(const CheckResult& r, const std::string& key) {
    const FieldValue* v = r.metric(key);
    if (!v || !std::holds_alternative<double>(*v)) throw std::runtime_error(r.tag + ": no float metric " + key);
    return std::get<double>(*v);
}

std::string metric_string(const CheckResult& r, const std::string& key) {
    const FieldValue* v = r.metric(key);
    if (!v || !std::holds_alternative<std::string>(*v)) throw std::runtime_error(r.tag + ": no string metric " + key);
    return std::get<std::string>(*v);
}

std::string describe(const CheckResult& r) {
    std::string s = r.tag;
    for (const Field& f : r.params) {
        s += " " + f.key + "=";
        if (const long long* i = std::get_if<long long>(&f.value)) s += std::to_string(*i);
        else if (const std::string* t = std::get_if<std::string>(&f.value)) s += *t;
    }
    return s;
}

void criterion1(Outcome& o) {
    auto t0 = Clock::now();
    int runs = 0;
    for (const char* name : {"divdiv3d", "koszul3d", "hessian3d", "hessian3d_koszul", "derham3d"})
        for (int k = 2; k <= 5; ++k, ++runs) {
            CheckResult r = run_complex(name, k);
            o.require(r.pass, describe(r));
        }
    for (const char* name : {"divdiv2d", "divdiv2d_koszul", "hessian2d", "hessian2d_koszul"})
        for (int k = 2; k <= 6; ++k, ++runs) {
            CheckResult r = run_complex(name, k);
            o.require(r.pass, describe(r));
        }
    CheckResult d3 = run_complex("divdiv3d", 3);
    o.require(metric_string(d3, "dims") == "168,280,120,4", "divdiv3d k=3 dims");
    double s = seconds_since(t0);
    o.require(s < 60, "runtime < 60 s");
    o.detail << runs << " exact complex checks in " << s << " s";
}

void criterion2(Outcome& o) {
    const long long expected[] = {116, 200, 316};  // (5k^3 + 36k^2 + 67k + 36) / 6
    for (int k = 3; k <= 5; ++k) {
        CheckResult r = run_decomposition("kernel_divdiv", k);
        long long nullity = r.metric_int("nullity");
        o.require(r.pass && nullity == expected[k - 3] && r.metric_int("dim_sym_curl_image") == nullity, describe(r));
        o.detail << "k=" << k << ":" << nullity << " ";
    }
}

void criterion3(Outcome& o) {
    struct Case {
        const char* name;
        long long a, b, whole;
    };
    for (const Case& c : {Case{"sym_curl_plus_xxT", 116, 4, 120}, Case{"hess_plus_sym_cross_x", 52, 68, 120},
                          Case{"S_cross_x_plus_dev_grad", 116, 164, 280}}) {
        CheckResult r = run_decomposition(c.name, 3);
        o.require(r.pass && r.metric_int("dim_part0") == c.a && r.metric_int("dim_part1") == c.b &&
                      r.metric_int("dim_whole") == c.whole && r.metric_int("rank_concat") == c.whole,
                  describe(r));
        o.detail << c.a << "+" << c.b << "=" << c.whole << " ";
        for (int k = 4; k <= 5; ++k) o.require(run_decomposition(c.name, k).pass, std::string(c.name) + " k=" + std::to_string(k));
    }
}

void sampled(Outcome& o, const std::vector<std::string>& names, bool green) {
    double worst = 0;
    int cells = 0;
    for (const std::string& n : names)
        for (std::uint64_t seed = 1; seed <= 5; ++seed, ++cells) {
            CheckResult r = green ? run_green(n, 3, seed, 10) : run_trace(n, 3, seed, 10);
            double v = metric_double(r, "max_relative_residual");
            worst = std::max(worst, v);
            o.require(r.pass && v < 1e-50, describe(r));
        }
    o.detail << cells << " cells x 10 inputs, worst relative residual " << worst;
}

void criterion6(Outcome& o) {
    auto t0 = Clock::now();
    struct Case {
        const char* name;
        int l, k;
        std::size_t size;
    };
    double worst = 1;
    for (const Case& c : {Case{"divdiv3d", 3, 3, 120}, Case{"divdiv3d", 3, 4, 126}, Case{"divdiv3d", 4, 4, 210},
                          Case{"symcurl3d", 3, 3, 280}, Case{"symcurl3d_lagrange", 3, 3, 280}, Case{"hermite3d", 3, 3, 168},
                          Case{"divdiv2d", 3, 3, 30}, Case{"divdiv3d_bubbleDofs", 3, 3, 120}}) {
        o.require(expected_dimension(make_element(c.name, c.l, c.k)) == c.size, std::string(c.name) + " formula");
        for (std::uint64_t seed = 0; seed <= 3; ++seed) {
            CheckResult r = run_unisolvence(c.name, c.l, c.k, seed == 0 ? "reference" : "random", seed);
            o.require(r.pass && r.metric_int("rows") == static_cast<long long>(c.size) &&
                          r.metric_int("cols") == static_cast<long long>(c.size),
                      describe(r));
            worst = std::min(worst, metric_double(r, "sigma_ratio"));
        }
    }
    double s = seconds_since(t0);
    o.require(s < 300, "runtime < 5 min");
    o.detail << "8 elements x 4 cells, smallest sigma ratio " << worst << ", " << s << " s";
}

void criterion7(Outcome& o) {
    double worst = 0;
    for (auto [l, dim] : {std::pair{3, 44LL}, std::pair{4, 104LL}})
        for (std::uint64_t seed : {0ULL, 1ULL}) {
            CheckResult r = run_bubble_space(l, seed);
            worst = std::max(worst, metric_double(r, "face_trace_residual"));
            o.require(r.pass && r.metric_int("dim") == dim && r.metric_int("rank") == dim, describe(r));
        }
    o.detail << "dims 44, 104; worst face trace " << worst;
}

void criterion8(Outcome& o) {
    struct Case {
        int dim, l, k;
        std::uint64_t seed;
        const char* dims;
    };
    for (const Case& c : {Case{3, 3, 3, 0, "12,44,32,0"}, Case{3, 3, 3, 1, "12,44,32,0"}, Case{3, 4, 4, 0, "30,104,80,6"},
                          Case{2, 3, 3, 0, "6,6,0"}, Case{2, 3, 3, 1, "6,6,0"}, Case{2, 4, 4, 0, "12,15,3"}}) {
        CheckResult r = run_bubble_complex(c.dim, c.l, c.k, c.seed);
        o.require(r.pass && metric_string(r, "dims") == c.dims, describe(r));
    }
    o.detail << "12->44->32->0, 30->104->80->6, 2D analogs";
}

void criterion9(Outcome& o) {
    auto t0 = Clock::now();
    for (const char* name : {"single_tet", "two_tets", "cube6"}) {
        Mesh m = builtin_mesh(name);
        CheckResult r = run_mesh(m, 3, 3, 1);
        o.require(r.pass, describe(r));
        o.require(metric_string(r, "dims") == metric_string(r, "formula_dims"), std::string(name) + " formula dims");
        o.require(r.metric_int("alternating_sum") == 4, std::string(name) + " alternating sum");
        o.require(metric_double(r, "surjectivity_residual") < 1e-40, std::string(name) + " surjectivity");
        for (const char* key : {"single_valued_V", "single_valued_Sigma_T", "single_valued_Sigma_S"})
            o.require(metric_double(r, key) < 1e-55, std::string(name) + " " + key);
        if (std::string(name) == "two_tets") o.require(metric_string(r, "dims") == "264,449,197,8", "two_tets dims");
        o.detail << name << ":" << metric_string(r, "dims") << " ";
    }
    double s = seconds_since(t0);
    o.require(s < 600, "runtime < 10 min");
    o.detail << s << " s";
}

void criterion10(Outcome& o) {
    std::vector<CheckResult> rs = run_identities(20, 1);
    o.require(rs.size() == 9, "nine identities");
    for (const CheckResult& r : rs) o.require(r.pass, r.tag);
    o.detail << rs.size() << " identities x 20 inputs";
}

}  // namespace

int main() {
    set_default_precision(256);
    struct Criterion {
        const char* label;
        std::function<void(Outcome&)> run;
    };
    std::vector<Criterion> all = {
        {"polynomial complexes exact", criterion1},
        {"kernel dimension of div div on P_k(S)", criterion2},
        {"direct sum decompositions", criterion3},
        {"Green identities", [](Outcome& o) { sampled(o, green_names(), true); }},
        {"trace relations", [](Outcome& o) { sampled(o, trace_check_names(), false); }},
        {"unisolvence", criterion6},
        {"bubble space", criterion7},
        {"bubble complexes", criterion8},
        {"global complex on meshes", criterion9},
        {"identity suite", criterion10},
    };
    bool ok = true;
    for (std::size_t i = 0; i < all.size(); ++i) {
        Outcome o;
        try {
            all[i].run(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        ok = ok && o.pass;
        std::printf("AC%-2zu %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", all[i].label, o.detail.str().c_str());
        std::fflush(stdout);
    }
    return ok ? 0 : 1;
}
