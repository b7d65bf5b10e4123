// End-to-end checks of the command-line front end: exit codes, output
// shapes, determinism, and a few known values.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        std::cerr << "[FAIL] " << what << "\n";
        ++failures;
    }
}

std::string g_bin;
std::string g_dir;

void write(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(const std::string& args) {
    std::string cmd = g_bin + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

double csv_field(const std::string& line, int idx) {
    std::istringstream ss(line);
    std::string tok;
    for (int i = 0; i <= idx; ++i) std::getline(ss, tok, ',');
    return std::atof(tok.c_str());
}

std::string line_of(const std::string& text, int n) {
    std::istringstream ss(text);
    std::string line;
    for (int i = 0; i <= n; ++i) std::getline(ss, line);
    return line;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <fhdet-binary>\n";
        return 1;
    }
    g_bin = argv[1];
    g_dir = "cli_scratch";
    if (std::system(("rm -rf " + g_dir + " && mkdir -p " + g_dir).c_str()) != 0)
        return 1;

    // --- det: identity symbol, toeplitz and kappa = 1
    write(g_dir + "/det.json", R"({
      "symbol": {"v_coeffs": [], "singularities": []},
      "n_list": [4, 10],
      "kappa_list": [0, 1]
    })");
    expect(run("det --config " + g_dir + "/det.json --out " + g_dir +
               "/det.csv") == 0,
           "det exit 0");
    {
        std::string csv = slurp(g_dir + "/det.csv");
        expect(contains(csv, "config_hash,n,kappa,value_re"), "det header");
        expect(contains(csv, ",toeplitz,"), "det toeplitz rows");
        // identity symbol: toeplitz -> 1, kappa=1 -> 2
        std::string l1 = line_of(csv, 1), l2 = line_of(csv, 2);
        expect(std::abs(csv_field(l1, 3) - 1.0) < 1e-10, "det D_4 = 1");
        expect(std::abs(csv_field(l2, 3) - 2.0) < 1e-10, "det TH1_4 = 2");
    }

    // determinism: identical config + seed -> byte-identical output
    expect(run("det --config " + g_dir + "/det.json --out " + g_dir +
               "/det2.csv") == 0,
           "det rerun exit 0");
    expect(slurp(g_dir + "/det.csv") == slurp(g_dir + "/det2.csv"),
           "det byte-identical rerun");

    // --- parse failures -> exit 2
    write(g_dir + "/bad.json", "{ not json");
    expect(run("det --config " + g_dir + "/bad.json --out " + g_dir +
               "/x.csv") == 2,
           "malformed json -> 2");
    expect(run("det --config " + g_dir + "/missing.json --out " + g_dir +
               "/x.csv") == 2,
           "missing file -> 2");
    write(g_dir + "/bad2.json", R"({"symbol": {}, "n_list": [8, 4]})");
    expect(run("det --config " + g_dir + "/bad2.json --out " + g_dir +
               "/x.csv") == 2,
           "descending n_list -> 2");

    // --- compare: strong-Szego spec, residuals decreasing
    write(g_dir + "/cmp.json", R"({
      "formula": "ehrhardt",
      "symbol": {"v_coeffs": [[1, 1.0], [-1, 1.0]], "singularities": []},
      "n_list": [8, 16, 32]
    })");
    expect(run("compare --config " + g_dir + "/cmp.json --out " + g_dir +
               "/cmp.csv") == 0,
           "compare exit 0");
    {
        std::string csv = slurp(g_dir + "/cmp.csv");
        expect(contains(csv, "# residual_trend,decreasing"),
               "compare trend verdict");
        expect(contains(csv, "term_szego_sum_re"), "compare term breakdown");
        std::string l3 = line_of(csv, 3); // n = 32 row
        expect(csv_field(l3, 8) < 1e-6, "strong-Szego residual < 1e-6 at n=32");
    }

    // --- compare: zero spec has zero residual
    write(g_dir + "/cmp0.json", R"({
      "formula": "ehrhardt",
      "symbol": {"v_coeffs": [], "singularities": []},
      "n_list": [4, 8]
    })");
    run("compare --config " + g_dir + "/cmp0.json --out " + g_dir + "/cmp0.csv");
    {
        std::string csv = slurp(g_dir + "/cmp0.csv");
        expect(csv_field(line_of(csv, 1), 8) < 1e-12, "zero spec residual 0");
    }

    // --- compare: uniform_th on the merging battery emits rows per (n, t)
    write(g_dir + "/cmpu.json", R"({
      "formula": "uniform_th",
      "merging": {"p": 1.5707963267948966, "alpha1": 0.3, "alpha2": 0.3,
                   "beta1_im": 0.1, "beta2_im": -0.1,
                   "t_list": [0.05, 0.1]},
      "n_list": [16],
      "kappa": 2
    })");
    expect(run("compare --config " + g_dir + "/cmpu.json --out " + g_dir +
               "/cmpu.csv") == 0,
           "compare uniform_th exit 0");
    {
        std::string csv = slurp(g_dir + "/cmpu.csv");
        int rows = 0;
        std::istringstream ss(csv);
        std::string line;
        while (std::getline(ss, line))
            if (!line.empty() && line[0] != '#' && line.find("config") != 0)
                ++rows;
        expect(rows == 2, "uniform_th row per (n,t)");
        expect(contains(csv, "term_painleve_integral_re"),
               "uniform_th painleve term present");
    }

    // --- mc: trivial group average has stderr 0 and exact reference match
    write(g_dir + "/mc.json", R"({
      "task": "group_average",
      "group": {"family": "Sp", "dim": 4},
      "h": "one",
      "samples": 50,
      "seed": 11
    })");
    expect(run("mc --config " + g_dir + "/mc.json --out " + g_dir +
               "/mc.json.out") == 0,
           "mc exit 0");
    {
        std::string js = slurp(g_dir + "/mc.json.out");
        expect(contains(js, "\"mean_re\": 1.0"), "mc mean 1");
        expect(contains(js, "\"reference_re\": 1.0"), "mc reference 1");
    }

    // --- painleve: tabulation columns + relation residual lines
    write(g_dir + "/pv.json", R"({
      "alpha1": 0.3, "alpha2": 0.3, "beta1_im": 0.0, "beta2_im": 0.0,
      "x_max": 25.0, "relation_x": [20.0]
    })");
    expect(run("painleve --config " + g_dir + "/pv.json --out " + g_dir +
               "/pv.csv") == 0,
           "painleve exit 0");
    {
        std::string csv = slurp(g_dir + "/pv.csv");
        expect(contains(csv, "config_hash,x,sigma,sigma_s,integral,residual"),
               "painleve header");
        expect(contains(csv, "# relation_residual,20"),
               "painleve relation line");
    }

    // invalid painleve parameters -> exit 2 (domain), solver range -> 2
    write(g_dir + "/pvbad.json", R"({"alpha1": -0.9, "x_max": 10.0})");
    expect(run("painleve --config " + g_dir + "/pvbad.json --out " + g_dir +
               "/pvbad.csv") == 4,
           "painleve invalid params -> 4");

    // --- numeric failure -> exit 3 (unreachable coefficient tolerance)
    write(g_dir + "/det3.json", R"({
      "symbol": {"v_coeffs": [],
                 "singularities": [{"theta": 1.0, "alpha": 0.3, "beta_im": 0.1},
                                    {"theta": 5.283185307179586, "alpha": 0.3,
                                     "beta_im": -0.1}]},
      "n_list": [2], "kappa_list": [0], "tol": 1e-16
    })");
    expect(run("det --config " + g_dir + "/det3.json --out " + g_dir +
               "/det3.csv") == 3,
           "unreachable tol -> 3");

    // --- gmc: k=0 masses equal the cell lengths; summary written
    write(g_dir + "/gmc.json", R"({
      "k": 0, "alpha": 0.3, "beta_im": 0.0, "cells": 4,
      "replicas": 3, "seed": 5, "sign": 1
    })");
    expect(run("gmc --config " + g_dir + "/gmc.json --out " + g_dir +
               "/gmc.csv --summary " + g_dir + "/gmc_summary.json") == 0,
           "gmc exit 0");
    {
        std::string csv = slurp(g_dir + "/gmc.csv");
        expect(contains(csv, "config_hash,replicate,cell_index,mass"),
               "gmc header");
        expect(std::abs(csv_field(line_of(csv, 1), 3) - M_PI / 2) < 1e-9,
               "gmc k=0 cell mass = length");
        std::string js = slurp(g_dir + "/gmc_summary.json");
        expect(contains(js, "\"variance\""), "gmc summary variance");
    }

    if (failures == 0) {
        std::printf("cli_tests: all checks passed\n");
        return 0;
    }
    std::printf("cli_tests: %d failures\n", failures);
    return 1;
}
