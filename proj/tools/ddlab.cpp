// ddlab: command-line driver for the verification suite.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
// 3 internal error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "ddlab/bigfloat.hpp"
#include "ddlab/complexes.hpp"
#include "ddlab/errors.hpp"
#include "ddlab/suite.hpp"

using namespace ddlab;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

struct Range {
    long lo = 0, hi = 0;
    std::vector<long> values() const {
        std::vector<long> v;
        for (long i = lo; i <= hi; ++i) v.push_back(i);
        return v;
    }
};

Range parse_range(const std::string& text, const char* what) {
    Range r;
    try {
        std::size_t dots = text.find("..");
        std::size_t used = 0;
        if (dots == std::string::npos) {
            r.lo = r.hi = std::stol(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
        } else {
            std::string a = text.substr(0, dots), b = text.substr(dots + 2);
            r.lo = std::stol(a, &used);
            if (used != a.size()) throw std::invalid_argument(text);
            r.hi = std::stol(b, &used);
            if (used != b.size()) throw std::invalid_argument(text);
        }
    } catch (const std::logic_error&) {
        throw InputError(std::string(what) + ": expected an integer or a range a..b, got '" + text + "'");
    }
    if (r.lo > r.hi) throw InputError(std::string(what) + ": empty range " + text);
    if (r.hi - r.lo > 10000) throw InputError(std::string(what) + ": range too long");
    return r;
}

using Task = std::function<std::vector<CheckResult>()>;

struct Run {
    std::vector<std::string> labels;
    std::vector<Task> tasks;
    void add(std::string label, Task t) {
        labels.push_back(std::move(label));
        tasks.push_back(std::move(t));
    }
    void one(std::string label, std::function<CheckResult()> f) {
        add(std::move(label), [f] { return std::vector<CheckResult>{f()}; });
    }
};

// Runs the tasks on a bounded pool and returns the results in task order;
// the first failing task (by index) rethrows.
std::vector<CheckResult> execute(const Run& run, int jobs, bool verbose) {
    std::size_t n = run.tasks.size();
    std::vector<std::vector<CheckResult>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    std::mutex log_mutex;
    std::size_t next = 0;
    std::mutex queue_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lock(queue_mutex);
                if (next >= n) return;
                i = next++;
            }
            auto start = std::chrono::steady_clock::now();
            try {
                slots[i] = run.tasks[i]();
            } catch (...) {
                errors[i] = std::current_exception();
            }
            if (verbose) {
                double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                std::lock_guard<std::mutex> lock(log_mutex);
                std::fprintf(stderr, "[%zu/%zu] %s %.2fs\n", i + 1, n, run.labels[i].c_str(), s);
            }
        }
    };
    int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    for (std::size_t i = 0; i < n; ++i)
        if (errors[i]) std::rethrow_exception(errors[i]);
    std::vector<CheckResult> out;
    for (auto& s : slots)
        for (CheckResult& r : s) out.push_back(std::move(r));
    return out;
}

json to_json(const FieldValue& v) {
    return std::visit([](const auto& x) { return json(x); }, v);
}

json to_json(const std::vector<Field>& fs) {
    json j = json::object();
    for (const Field& f : fs) j[f.key] = to_json(f.value);
    return j;
}

std::string to_text(const FieldValue& v) {
    if (const bool* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
    if (const long long* i = std::get_if<long long>(&v)) return std::to_string(*i);
    if (const double* d = std::get_if<double>(&v)) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", *d);
        return buf;
    }
    return std::get<std::string>(v);
}

std::string to_text(const std::vector<Field>& fs) {
    std::string s;
    for (std::size_t i = 0; i < fs.size(); ++i) s += (i ? ";" : "") + fs[i].key + "=" + to_text(fs[i].value);
    return s;
}

std::string render(const std::string& format, const json& config, const std::vector<CheckResult>& results) {
    if (format == "tsv") {
        std::string s = "tag\tpass\tparams\tmetrics\tnotes\n";
        for (const CheckResult& r : results)
            s += r.tag + "\t" + (r.pass ? "PASS" : "FAIL") + "\t" + to_text(r.params) + "\t" + to_text(r.metrics) + "\t" + r.notes + "\n";
        return s;
    }
    json doc;
    doc["tool_version"] = kToolVersion;
    doc["config"] = config;
    doc["results"] = json::array();
    for (const CheckResult& r : results)
        doc["results"].push_back({{"tag", r.tag}, {"params", to_json(r.params)}, {"pass", r.pass},
                                  {"metrics", to_json(r.metrics)}, {"notes", r.notes}});
    return doc.dump(2) + "\n";
}

// Options recorded in the report, in declaration order.
json leaf_config(const CLI::App* leaf) {
    json j = json::object();
    for (const CLI::Option* o : leaf->get_options()) {
        if (o->get_name() == "--help" || o->get_name().empty()) continue;
        std::string key = o->get_name();
        while (!key.empty() && key[0] == '-') key.erase(0, 1);
        if (o->count() == 0) continue;
        std::vector<std::string> vals = o->results();
        if (vals.size() == 1) j[key] = vals[0];
        else j[key] = vals;
    }
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and high-precision checks of the divdiv finite element complexes"};
    app.require_subcommand(1);
    app.fallthrough();

    int precision = 256;
    std::string format = "json", out_path, seed_text = "0";
    int jobs = 1;
    bool verbose = false;
    app.add_option("--precision", precision, "Float precision in bits (>= 64)")->check(CLI::Range(64, 1 << 20));
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "tsv"}));
    app.add_option("--out", out_path, "Report path (default stdout)");
    app.add_option("--seed", seed_text, "Seed or seed range a..b; 0 selects the reference cell");
    app.add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));
    app.add_flag("-v,--verbose", verbose, "Progress and timings on stderr");

    Run run;
    std::vector<std::function<void()>> builders;
    std::string k_text, l_text, name, cell = "reference";
    std::vector<std::string> meshes;
    int samples = 0;
    std::string dim_text = "all";

    auto seeds = [&] { return parse_range(seed_text, "--seed").values(); };
    auto range_or = [](const std::string& text, const char* what, long lo, long hi) {
        return text.empty() ? Range{lo, hi}.values() : parse_range(text, what).values();
    };

    CLI::App* complex = app.add_subcommand("complex", "Polynomial complexes")->require_subcommand(1);
    CLI::App* complex_verify = complex->add_subcommand("verify", "Exact complex property and exactness");
    complex_verify->add_option("--name", name, "Complex name (default all)");
    complex_verify->add_option("--k", k_text, "Degree or range (default the complex's test range)");
    complex_verify->callback([&] {
        std::vector<std::string> names;
        if (name.empty())
            for (const ComplexSpec& c : builtin_complexes()) names.push_back(c.name);
        else
            names.push_back(find_complex(name).name);
        for (const std::string& n : names) {
            const ComplexSpec& c = find_complex(n);
            for (long k : range_or(k_text, "--k", c.test_k_min, c.test_k_max))
                run.one(n + " k=" + std::to_string(k), [n, k] { return run_complex(n, static_cast<int>(k)); });
        }
    });

    CLI::App* decomp = app.add_subcommand("decomp", "Direct sum decompositions")->require_subcommand(1);
    CLI::App* decomp_verify = decomp->add_subcommand("verify", "Rank certificates of the decompositions");
    decomp_verify->add_option("--name", name, "Decomposition name (default all)");
    decomp_verify->add_option("--k", k_text, "Degree or range (default 3..5)");
    decomp_verify->callback([&] {
        std::vector<std::string> names = name.empty() ? decomposition_names() : std::vector<std::string>{name};
        for (const std::string& n : names)
            for (long k : range_or(k_text, "--k", 3, 5))
                run.one(n + " k=" + std::to_string(k), [n, k] { return run_decomposition(n, static_cast<int>(k)); });
    });

    CLI::App* element = app.add_subcommand("element", "Finite element DOF checks")->require_subcommand(1);
    auto element_leaf = [&](const char* leaf, const char* help, bool dual) {
        CLI::App* s = element->add_subcommand(leaf, help);
        s->add_option("--name", name, "Element name")->required();
        s->add_option("--l", l_text, "l or range (default 3)");
        s->add_option("--k", k_text, "k or range (default 3)");
        s->add_option("--cell", cell, "reference or random (seeded by --seed)")->check(CLI::IsMember({"reference", "random"}));
        s->callback([&, dual] {
            std::vector<long> ss = cell == "random" ? seeds() : std::vector<long>{0};
            for (long l : range_or(l_text, "--l", 3, 3))
                for (long k : range_or(k_text, "--k", 3, 3))
                    for (long seed : ss) {
                        std::string n = name, c = cell;
                        auto s64 = static_cast<std::uint64_t>(seed);
                        int li = static_cast<int>(l), ki = static_cast<int>(k);
                        run.one(n + " " + std::to_string(l) + "," + std::to_string(k) + " " + c + " " + std::to_string(seed),
                                [n, c, li, ki, s64, dual] {
                                    return dual ? run_dual_basis(n, li, ki, c, s64) : run_unisolvence(n, li, ki, c, s64);
                                });
                    }
        });
    };
    element_leaf("unisolvence", "Square, well-conditioned DOF matrix", false);
    element_leaf("dualbasis", "Dual basis and its residual", true);

    CLI::App* bubble = app.add_subcommand("bubble", "Bubble spaces and complexes")->require_subcommand(1);
    CLI::App* bubble_verify = bubble->add_subcommand("verify", "Bubble space, 3D and 2D bubble complexes");
    bubble_verify->add_option("--l", l_text, "l or range (default 3..4)");
    bubble_verify->add_option("--k", k_text, "k (default l)");
    bubble_verify->add_option("--dim", dim_text, "2, 3 or all")->check(CLI::IsMember({"2", "3", "all"}));
    bubble_verify->callback([&] {
        for (long seed : seeds())
            for (long l : range_or(l_text, "--l", 3, 4)) {
                std::vector<long> ks = k_text.empty() ? std::vector<long>{l} : parse_range(k_text, "--k").values();
                auto s64 = static_cast<std::uint64_t>(seed);
                int li = static_cast<int>(l);
                std::string suffix = " l=" + std::to_string(l) + " seed=" + std::to_string(seed);
                if (dim_text != "2") run.one("space" + suffix, [li, s64] { return run_bubble_space(li, s64); });
                for (long k : ks) {
                    int ki = static_cast<int>(k);
                    if (dim_text != "2") run.one("complex3d" + suffix, [li, ki, s64] { return run_bubble_complex(3, li, ki, s64); });
                    if (dim_text != "3") run.one("complex2d" + suffix, [li, ki, s64] { return run_bubble_complex(2, li, ki, s64); });
                }
            }
    });

    auto sampled_leaf = [&](CLI::App* parent, const char* leaf, const char* help, bool green) {
        CLI::App* s = parent->add_subcommand(leaf, help);
        s->add_option("--name", name, green ? "divdiv3d, divdiv2d or symcurl (default all)" : "3d or 2d (default all)");
        s->add_option("--k", k_text, "Polynomial degree or range (default 3)");
        s->add_option("--samples", samples, "Random inputs per cell (default 10)")->check(CLI::Range(1, 100000));
        s->callback([&, green] {
            std::vector<std::string> names = name.empty() ? (green ? green_names() : trace_check_names()) : std::vector<std::string>{name};
            int n_samples = samples > 0 ? samples : 10;
            for (const std::string& n : names)
                for (long k : range_or(k_text, "--k", 3, 3))
                    for (long seed : seeds()) {
                        auto s64 = static_cast<std::uint64_t>(seed);
                        int ki = static_cast<int>(k);
                        run.one(n + " k=" + std::to_string(k) + " seed=" + std::to_string(seed), [n, ki, s64, n_samples, green] {
                            return green ? run_green(n, ki, s64, n_samples) : run_trace(n, ki, s64, n_samples);
                        });
                    }
        });
    };
    CLI::App* green = app.add_subcommand("green", "Green identities")->require_subcommand(1);
    sampled_leaf(green, "check", "Relative residuals on random polynomials", true);
    CLI::App* tracecmd = app.add_subcommand("trace", "Trace relations")->require_subcommand(1);
    sampled_leaf(tracecmd, "check", "Relative residuals on random polynomials", false);

    CLI::App* mesh = app.add_subcommand("mesh", "Global finite element complex")->require_subcommand(1);
    CLI::App* mesh_verify = mesh->add_subcommand("verify", "Global complex on a mesh");
    mesh_verify->add_option("--mesh", meshes, "Builtin mesh name or file (repeatable; default all builtins)");
    mesh_verify->add_option("--l", l_text, "l (default 3)");
    mesh_verify->add_option("--k", k_text, "k (default 3)");
    mesh_verify->callback([&] {
        std::vector<std::string> ms = meshes.empty() ? builtin_mesh_names() : meshes;
        for (const std::string& m : ms) {
            Mesh parsed = resolve_mesh(m);
            for (long l : range_or(l_text, "--l", 3, 3))
                for (long k : range_or(k_text, "--k", 3, 3))
                    for (long seed : seeds()) {
                        int li = static_cast<int>(l), ki = static_cast<int>(k);
                        auto s64 = static_cast<std::uint64_t>(seed);
                        run.one(m + " " + std::to_string(l) + "," + std::to_string(k), [parsed, li, ki, s64] { return run_mesh(parsed, li, ki, s64); });
                    }
        }
    });

    CLI::App* dims = app.add_subcommand("dims", "Global dimension counts")->require_subcommand(1);
    CLI::App* dims_table = dims->add_subcommand("table", "Assembled dimension against the closed form");
    dims_table->add_option("--name", name, "V_h, Sigma_h_T, Sigma_h_S or Q_h (default all)");
    dims_table->add_option("--mesh", meshes, "Builtin mesh name or file (repeatable; default all builtins)");
    dims_table->add_option("--l", l_text, "l or range (default 3)");
    dims_table->add_option("--k", k_text, "k or range (default 3)");
    dims_table->callback([&] {
        std::vector<std::string> ms = meshes.empty() ? builtin_mesh_names() : meshes;
        std::vector<std::string> names = name.empty() ? global_space_names() : std::vector<std::string>{name};
        for (const std::string& m : ms) {
            Mesh parsed = resolve_mesh(m);
            for (const std::string& n : names)
                for (long l : range_or(l_text, "--l", 3, 3))
                    for (long k : range_or(k_text, "--k", 3, 3)) {
                        int li = static_cast<int>(l), ki = static_cast<int>(k);
                        run.one(n + " " + m, [n, parsed, li, ki] { return run_dims(n, parsed, li, ki); });
                    }
        }
    });

    CLI::App* identities = app.add_subcommand("identities", "Vector calculus identities")->require_subcommand(1);
    CLI::App* identities_check = identities->add_subcommand("check", "Randomized identity suite");
    identities_check->add_option("--samples", samples, "Random inputs per identity (default 20)")->check(CLI::Range(1, 100000));
    identities_check->callback([&] {
        int n = samples > 0 ? samples : 20;
        for (long seed : seeds()) {
            auto s64 = static_cast<std::uint64_t>(seed);
            run.add("identities seed=" + std::to_string(seed), [n, s64] { return run_identities(n, s64); });
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return e.get_exit_code() == 0 ? code : 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    const CLI::App* leaf = &app;
    std::string command;
    while (!leaf->get_subcommands().empty()) {
        leaf = leaf->get_subcommands().front();
        command += (command.empty() ? "" : " ") + leaf->get_name();
    }

    try {
        set_default_precision(precision);
        json config;
        config["command"] = command;
        config["precision"] = precision;
        config["seed"] = seed_text;
        config["format"] = format;
        config["options"] = leaf_config(leaf);
        std::vector<CheckResult> results = execute(run, jobs, verbose);
        std::string report = render(format, config, results);
        if (out_path.empty()) {
            std::cout << report;
        } else {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) throw InputError("cannot write " + out_path);
            f << report;
        }
        bool all = true;
        for (const CheckResult& r : results) all = all && r.pass;
        return all ? 0 : 1;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
