#include "gibbslab/runner.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gibbslab/csv.hpp"
#include "gibbslab/drift.hpp"
#include "gibbslab/optim.hpp"
#include "gibbslab/partition.hpp"
#include "gibbslab/periodize.hpp"
#include "gibbslab/rng.hpp"
#include "gibbslab/sampler.hpp"
#include "gibbslab/stats.hpp"

namespace gibbslab {

namespace {

const std::vector<std::string> kCommands = {"q",  "ck",         "ckn",        "cb",   "sample",
                                            "zeta-check", "lowerbound", "mc-z", "rate"};

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

void apply_json_config(const std::string& path, RunConfig& cfg) {
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) throw UsageError("config file not readable: " + path);
    std::string text;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof(buf), fp)) > 0) text.append(buf, got);
    std::fclose(fp);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw UsageError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw UsageError("config file must hold a flat JSON object");
    for (auto& [key, val] : j.items()) {
        if (key == "command") cfg.command = val.get<std::string>();
        else if (key == "d") cfg.d = val.get<int>();
        else if (key == "s") cfg.s = val.get<double>();
        else if (key == "p") cfg.p = val.get<double>();
        else if (key == "K") cfg.K = val.get<double>();
        else if (key == "massive") cfg.massive = val.get<bool>();
        else if (key == "N") cfg.N = val.get<int>();
        else if (key == "nList") cfg.nList = val.get<std::vector<int>>();
        else if (key == "nsamples") cfg.nsamples = val.get<int>();
        else if (key == "seed") cfg.seed = val.get<std::uint64_t>();
        else if (key == "out") cfg.outPath = val.get<std::string>();
        else if (key == "field-out") cfg.fieldOut = val.get<std::string>();
        else if (key == "tol") cfg.tol = val.get<double>();
        else if (key == "boxL") cfg.boxL = val.get<int>();
        else if (key == "T") cfg.T = val.get<int>();
        else if (key == "beta") cfg.beta = val.get<double>();
        else if (key == "threads") cfg.threads = val.get<int>();
        else if (key == "multistarts") cfg.multistarts = val.get<int>();
        else if (key == "maxIter") cfg.maxIter = val.get<int>();
        else if (key == "mode") cfg.mode = val.get<std::string>();
        else if (key == "alphaPolicy") cfg.alphaPolicy = val.get<std::string>();
        else if (key == "withUpper") cfg.withUpper = val.get<bool>();
        else throw UsageError("config file: unknown key '" + key + "'");
    }
}

ModelParams model_of(const RunConfig& cfg) {
    ModelParams mp{cfg.d, cfg.s, cfg.p, cfg.K, cfg.massive};
    mp.validate();
    return mp;
}

void require_critical(const ModelParams& mp, const std::string& cmd) {
    if (classify(mp) != Criticality::Critical)
        throw UsageError(cmd + ": requires the critical exponent p = 4s/d + 2 = " +
                         format_double(critical_p(mp.d, mp.s)) + ", got p = " + format_double(mp.p) +
                         " (" + to_string(classify(mp)) + ")");
}

std::string resolve_path(std::string path) {
    if (!path.empty() && path[0] != '/') {
        const char* dir = std::getenv("GIBBSLAB_OUTDIR");
        if (dir && *dir) path = std::string(dir) + "/" + path;
    }
    return path;
}

std::string resolve_out(const RunConfig& cfg, const std::string& fallback) {
    return resolve_path(cfg.outPath.empty() ? fallback : cfg.outPath);
}

OptimOptions optim_opts(const RunConfig& cfg) {
    OptimOptions o;
    o.tol = cfg.tol;
    o.maxIter = cfg.maxIter;
    o.multistarts = cfg.multistarts;
    o.seed = cfg.seed;
    return o;
}

std::vector<std::string> optim_row(const std::string& constant, const RunConfig& cfg, double L,
                                   int M, int N, double value, double gradNorm, int iters) {
    return {constant,
            std::to_string(cfg.d),
            format_double(cfg.s),
            format_double(cfg.p),
            format_double(cfg.K),
            format_double(L),
            std::to_string(M),
            std::to_string(N),
            format_double(value),
            format_double(gradNorm),
            std::to_string(iters),
            std::to_string(cfg.seed)};
}

const std::vector<std::string> kOptimHeader = {"constant", "d", "s",     "p",        "K",
                                               "L",        "M", "N",     "value",    "gradNorm",
                                               "iterations", "seed"};

void write_field_csv(const SpectralField& f, const std::string& path, const std::string& stamp) {
    CsvWriter w(path, stamp, {"n1", "n2", "n3", "re", "im"});
    for_each_mode(f.grid, [&](const Mode& n, std::size_t idx) {
        const cplx c = f.coeffs[idx];
        if (c == cplx{0.0, 0.0}) return;
        w.add_row({std::to_string(n[0]), std::to_string(n[1]), std::to_string(n[2]),
                   format_double(c.real()), format_double(c.imag())});
    });
    w.close();
}

GridSpec ground_state_box(int d, int L) {
    const int perUnit = d == 1 ? 32 : (d == 2 ? 8 : 2);
    const int M = next_power_of_two(perUnit * L);
    return GridSpec{d, M / 2 - 1, M, static_cast<double>(L)};
}

int cmd_q(const RunConfig& cfg) {
    const GridSpec box = ground_state_box(cfg.d, cfg.boxL);
    const GroundState gs = gns_ground_state(cfg.d, cfg.s, cfg.p, box, optim_opts(cfg));
    CsvWriter w(resolve_out(cfg, "q.csv"), cfg.stamp(), kOptimHeader);
    w.add_row(optim_row("massQ", cfg, box.L, box.M, box.N, gs.massQ, gs.opt.gradNorm, gs.opt.iterations));
    w.add_row(optim_row("massQ2", cfg, box.L, box.M, box.N, gs.massQ * gs.massQ, gs.opt.gradNorm,
                        gs.opt.iterations));
    w.add_row(optim_row("cGNS", cfg, box.L, box.M, box.N, gs.cGNS, gs.opt.gradNorm, gs.opt.iterations));
    w.add_row(optim_row("residualQ", cfg, box.L, box.M, box.N, gs.residual, gs.opt.gradNorm,
                        gs.opt.iterations));
    w.add_row(optim_row("HQ", cfg, box.L, box.M, box.N, hamiltonian_eval(gs.Q, cfg.s, cfg.p),
                        gs.opt.gradNorm, gs.opt.iterations));
    w.close();
    if (!cfg.fieldOut.empty()) write_field_csv(gs.Q, resolve_path(cfg.fieldOut), cfg.stamp());
    std::printf("q massQ=%.10g cGNS=%.10g residual=%.3g %s -> %s\n", gs.massQ, gs.cGNS, gs.residual,
                gs.opt.converged ? "converged" : "NOT-CONVERGED", w.path().c_str());
    return gs.opt.converged ? kExitOk : kExitNoConvergence;
}

int cmd_ck(const RunConfig& cfg) {
    const ModelParams mp = model_of(cfg);
    require_critical(mp, "ck");
    const GridSpec box = box_grid_for_ball(cfg.d, cfg.boxL, cfg.p);
    const OptimResult r = ck_supremum(mp, box, optim_opts(cfg));
    CsvWriter w(resolve_out(cfg, "ck.csv"), cfg.stamp(), kOptimHeader);
    w.add_row(optim_row("CK", cfg, box.L, box.M, box.N, r.value, r.gradNorm, r.iterations));
    w.close();
    if (!cfg.fieldOut.empty()) write_field_csv(r.field, resolve_path(cfg.fieldOut), cfg.stamp());
    std::printf("ck value=%.10g gradNorm=%.3g %s -> %s\n", r.value, r.gradNorm,
                r.converged ? "converged" : "NOT-CONVERGED", w.path().c_str());
    return r.converged ? kExitOk : kExitNoConvergence;
}

int cmd_ckn(const RunConfig& cfg) {
    const ModelParams mp = model_of(cfg);
    require_critical(mp, "ckn");
    if (cfg.N < 1) throw UsageError("ckn: --N must be >= 1");
    const OptimResult r = ckn_torus_supremum(mp, cfg.N, optim_opts(cfg));
    const GridSpec g = default_grid(cfg.d, cfg.N, cfg.p, 1.0);
    CsvWriter w(resolve_out(cfg, "ckn.csv"), cfg.stamp(), kOptimHeader);
    w.add_row(optim_row("CKN", cfg, g.L, g.M, cfg.N, r.value, r.gradNorm, r.iterations));
    w.close();
    if (!cfg.fieldOut.empty()) write_field_csv(r.field, resolve_path(cfg.fieldOut), cfg.stamp());
    std::printf("ckn N=%d value=%.10g scaled=%.10g %s -> %s\n", cfg.N, r.value,
                r.value / std::pow(cfg.N, 2.0 * cfg.s), r.converged ? "converged" : "NOT-CONVERGED",
                w.path().c_str());
    return r.converged ? kExitOk : kExitNoConvergence;
}

int cmd_cb(const RunConfig& cfg) {
    const GridSpec box = box_grid_for_ball(cfg.d, cfg.boxL, cfg.p);
    const OptimResult r = cb_bernstein(cfg.d, cfg.p, box, optim_opts(cfg));
    CsvWriter w(resolve_out(cfg, "cb.csv"), cfg.stamp(), kOptimHeader);
    w.add_row(optim_row("CB", cfg, box.L, box.M, box.N, r.value, r.gradNorm, r.iterations));
    w.close();
    if (!cfg.fieldOut.empty()) write_field_csv(r.field, resolve_path(cfg.fieldOut), cfg.stamp());
    std::printf("cb value=%.10g gradNorm=%.3g %s -> %s\n", r.value, r.gradNorm,
                r.converged ? "converged" : "NOT-CONVERGED", w.path().c_str());
    return r.converged ? kExitOk : kExitNoConvergence;
}

int cmd_sample(const RunConfig& cfg) {
    const ModelParams mp = model_of(cfg);
    if (cfg.N < 1) throw UsageError("sample: --N must be >= 1");
    const FieldSample fs = sample_gff(mp, cfg.N, cfg.seed);
    const std::string path = resolve_out(cfg, "sample.csv");
    write_field_csv(fs.field, path, cfg.stamp());
    std::printf("sample N=%d l2=%.10g -> %s\n", cfg.N, l2_norm(fs.field), path.c_str());
    return kExitOk;
}

const std::vector<std::string> kTermHeader = {"N", "term", "estimate", "stderr", "nsamples", "seed"};

int cmd_zeta_check(const RunConfig& cfg) {
    const ModelParams mp = model_of(cfg);
    if (cfg.nList.empty()) throw UsageError("zeta-check: --nList must be given");
    CsvWriter w(resolve_out(cfg, "zeta_check.csv"), cfg.stamp(), kTermHeader);
    std::vector<double> lnN, lnMis, lnKin;
    for (int N : cfg.nList) {
        std::vector<double> mis(static_cast<std::size_t>(cfg.nsamples));
        std::vector<double> kin(static_cast<std::size_t>(cfg.nsamples));
        parallel_map(static_cast<std::size_t>(cfg.nsamples), cfg.threads, [&](std::size_t i) {
            const std::uint64_t sk = hash_combine(hash_combine(cfg.seed, kTagLowerBound), i);
            const BrownianModes b = sample_brownian(mp.d, N, cfg.T, sk, mp.massive);
            const ZetaPath z = zeta_evolve(b, mp, N);
            const SpectralField zf = z.terminal(mp.p);
            const SpectralField yf = terminal_field(b, mp, N);
            const SpectralField diff = axpy(cplx{-1.0, 0.0}, zf, yf);
            mis[i] = std::pow(l2_norm(diff), 2.0);
            kin[i] = zeta_kinetic_cost(z, mp.s);
            return 0.0;
        });
        const auto m = mean_stderr(mis);
        const auto k = mean_stderr(kin);
        w.add_row({std::to_string(N), "mismatchL2sq", format_double(m.mean), format_double(m.stderr_),
                   std::to_string(cfg.nsamples), std::to_string(cfg.seed)});
        w.add_row({std::to_string(N), "kineticHs", format_double(k.mean), format_double(k.stderr_),
                   std::to_string(cfg.nsamples), std::to_string(cfg.seed)});
        lnN.push_back(std::log(static_cast<double>(N)));
        lnMis.push_back(std::log(m.mean));
        lnKin.push_back(std::log(k.mean));
    }
    double misSlope = 0.0, kinSlope = 0.0;
    if (lnN.size() >= 2) {
        misSlope = ols_fit(lnN, lnMis).slope;
        kinSlope = ols_fit(lnN, lnKin).slope;
        w.add_row({"0", "mismatch-loglog-slope", format_double(misSlope), "0",
                   std::to_string(cfg.nsamples), std::to_string(cfg.seed)});
        w.add_row({"0", "kinetic-loglog-slope", format_double(kinSlope), "0",
                   std::to_string(cfg.nsamples), std::to_string(cfg.seed)});
    }
    w.close();
    std::printf("zeta-check mismatch-slope=%.4f kinetic-slope=%.4f -> %s\n", misSlope, kinSlope,
                w.path().c_str());
    return kExitOk;
}

Profile profile_for(const RunConfig& cfg, const ModelParams& mp, double* predicted,
                    double* massQ, bool* solverConverged) {
    // Supercritical: near-optimizer of the Bernstein constant. Critical:
    // near-optimizer of the constrained energy, both mapped into the
    // admissible class. The predicted rate constant comes along for free.
    *solverConverged = true;
    if (classify(mp) == Criticality::Critical) {
        const GridSpec box = box_grid_for_ball(cfg.d, cfg.boxL, cfg.p);
        const OptimResult ck = ck_supremum(mp, box, optim_opts(cfg));
        *solverConverged = ck.converged;
        *predicted = ck.value;
        if (massQ) {
            const GroundState gs = gns_ground_state(cfg.d, cfg.s, cfg.p, ground_state_box(cfg.d, 32),
                                                    optim_opts(cfg));
            *massQ = gs.massQ;
            *solverConverged = *solverConverged && gs.opt.converged;
        }
        return profile_from_box_field(ck.field, /*zeroDc=*/true, "ck-optimizer");
    }
    const GridSpec box = box_grid_for_ball(cfg.d, cfg.boxL, cfg.p);
    const OptimResult cb = cb_bernstein(cfg.d, cfg.p, box, optim_opts(cfg));
    *solverConverged = cb.converged;
    *predicted = cb.value * std::pow(mp.K, mp.p) / mp.p;
    if (massQ) *massQ = 0.0;
    return profile_from_box_field(cb.field, /*zeroDc=*/true, "cb-optimizer");
}

DriftLowerOptions drift_opts(const RunConfig& cfg) {
    DriftLowerOptions o;
    o.policy = cfg.alphaPolicy == "schedule" ? AlphaPolicy::Schedule : AlphaPolicy::Calibrated;
    if (cfg.alphaPolicy != "schedule" && cfg.alphaPolicy != "calibrated")
        throw UsageError("alphaPolicy must be 'schedule' or 'calibrated'");
    o.beta = cfg.beta;
    o.T = cfg.T;
    o.threads = cfg.threads;
    return o;
}

int cmd_lowerbound(const RunConfig& cfg) {
    const ModelParams mp = model_of(cfg);
    if (cfg.N < 1) throw UsageError("lowerbound: --N must be >= 1");
    double predicted = 0.0;
    bool conv = true;
    const Profile prof = profile_for(cfg, mp, &predicted, nullptr, &conv);
    const DriftLowerResult r = drift_lower_logZ(mp, cfg.N, prof, cfg.nsamples, cfg.seed, drift_opts(cfg));
    CsvWriter w(resolve_out(cfg, "lowerbound.csv"), cfg.stamp(), kTermHeader);
    auto row = [&](const std::string& term, double v, double se) {
        w.add_row({std::to_string(cfg.N), term, format_double(v), format_double(se),
                   std::to_string(cfg.nsamples), std::to_string(cfg.seed)});
    };
    row("main", r.report.mainTerm, 0.0);
    row("B1", r.report.B1.value, r.report.B1.stderr_);
    row("B2", r.report.B2.value, r.report.B2.stderr_);
    row("B3", r.report.B3.value, r.report.B3.stderr_);
    row("total", r.report.total, r.report.totalStderr);
    row("alpha", r.report.alpha, 0.0);
    row("acceptFrac", r.report.acceptFrac, 0.0);
    w.close();
    std::printf("lowerbound N=%d total=%.10g +/- %.3g alpha=%.6g accept=%.4f%s -> %s\n", cfg.N,
                r.report.total, r.report.totalStderr, r.report.alpha, r.report.acceptFrac,
                r.minusOneNegligible ? "" : " (-1 correction not negligible)", w.path().c_str());
    return conv ? kExitOk : kExitNoConvergence;
}

const std::vector<std::string> kZHeader = {"method", "d",     "s",      "p",        "K",
                                           "N",      "value", "stderr", "nsamples", "seed"};

std::vector<std::string> z_row(const PartitionEstimate& e, std::uint64_t seed) {
    return {to_string(e.method),          std::to_string(e.params.d), format_double(e.params.s),
            format_double(e.params.p),    format_double(e.params.K),  std::to_string(e.N),
            format_double(e.value),       format_double(e.stderr_),   std::to_string(e.nsamples),
            std::to_string(seed)};
}

int cmd_mc_z(const RunConfig& cfg) {
    const ModelParams mp = model_of(cfg);
    std::vector<int> ns = cfg.nList;
    if (ns.empty()) {
        if (cfg.N < 1) throw UsageError("mc-z: give --N or --nList");
        ns = {cfg.N};
    }
    CsvWriter w(resolve_out(cfg, "mcz.csv"), cfg.stamp(), kZHeader);
    for (int N : ns) {
        const PartitionEstimate e = direct_mc_logZ(mp, N, cfg.nsamples, cfg.seed, cfg.threads);
        w.add_row(z_row(e, cfg.seed));
        std::printf("mc-z N=%d logZ=%.10g +/- %.3g accept=%.4f cv=%.3g%s\n", N, e.value, e.stderr_,
                    e.acceptFrac, e.cv, e.heavyTail ? " HEAVY-TAIL" : "");
    }
    w.close();
    std::printf("mc-z -> %s\n", w.path().c_str());
    return kExitOk;
}

int cmd_rate(const RunConfig& cfg) {
    const ModelParams mp = model_of(cfg);
    if (cfg.nList.size() < 3) throw UsageError("rate: --nList needs >= 3 cutoffs");
    if (!cfg.mode.empty()) {
        const Criticality want =
            cfg.mode == "critical" ? Criticality::Critical : Criticality::Supercritical;
        if (cfg.mode != "critical" && cfg.mode != "supercritical")
            throw UsageError("rate: --mode must be 'critical' or 'supercritical'");
        if (classify(mp) != want)
            throw UsageError("rate: --mode " + cfg.mode + " contradicts the classifier verdict '" +
                             to_string(classify(mp)) + "' (critical p = " +
                             format_double(critical_p(mp.d, mp.s)) + ")");
    }
    double predicted = 0.0, massQ = 0.0;
    bool conv = true;
    const bool critical = classify(mp) == Criticality::Critical;
    const Profile prof = profile_for(cfg, mp, &predicted, critical ? &massQ : nullptr, &conv);
    if (critical && massQ > 0.0 && std::fabs(mp.K - massQ) <= 1e-9 * massQ)
        std::printf("rate: K sits at the critical mass threshold (no sign claim at equality)\n");

    CsvWriter w(resolve_out(cfg, "rate_estimates.csv"), cfg.stamp(), kZHeader);
    std::vector<PartitionEstimate> series;
    for (int N : cfg.nList) {
        const DriftLowerResult r = drift_lower_logZ(mp, N, prof, cfg.nsamples, cfg.seed, drift_opts(cfg));
        series.push_back(r.estimate);
        w.add_row(z_row(r.estimate, cfg.seed));
        std::printf("rate N=%d drift-lower=%.10g +/- %.3g alpha=%.6g\n", N, r.estimate.value,
                    r.estimate.stderr_, r.report.alpha);
        if (cfg.withUpper && critical) {
            const CknUpperResult u = ckn_upper_logZ(mp, N, optim_opts(cfg));
            w.add_row(z_row(u.estimate, cfg.seed));
            conv = conv && u.opt.converged;
        }
    }
    w.close();
    const RateSeries rs = fit_rate(series, mp, predicted);
    const std::string fitPath =
        cfg.outPath.empty() ? resolve_path("rate_fit.csv") : resolve_path(cfg.outPath + ".fit.csv");
    CsvWriter wf(fitPath, cfg.stamp(),
                 {"exponent", "slope", "predictedSlope", "relGap", "residual"});
    wf.add_row({format_double(rs.exponent), format_double(rs.slope), format_double(rs.predictedSlope),
                format_double(rs.relGap), format_double(rs.residual)});
    wf.close();
    std::printf("rate exponent=%.4g slope=%.10g predicted=%.10g relGap=%.4f -> %s\n", rs.exponent,
                rs.slope, rs.predictedSlope, rs.relGap, wf.path().c_str());
    return conv ? kExitOk : kExitNoConvergence;
}

}  // namespace

std::string RunConfig::stamp() const {
    std::ostringstream os;
    os << "command=" << command << " K=" << format_double(K) << " N=" << N << " T=" << T
       << " alphaPolicy=" << alphaPolicy << " beta=" << format_double(beta) << " boxL=" << boxL
       << " d=" << d << " massive=" << (massive ? 1 : 0) << " maxIter=" << maxIter
       << " mode=" << mode << " multistarts=" << multistarts << " nList=" << join_ints(nList)
       << " nsamples=" << nsamples << " p=" << format_double(p) << " s=" << format_double(s)
       << " seed=" << seed << " tol=" << format_double(tol)
       << " withUpper=" << (withUpper ? 1 : 0);
    return os.str();
}

RunConfig parse_config(int argc, const char* const* argv) {
    RunConfig cfg;
    // A config file provides defaults; explicit flags win.
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") apply_json_config(argv[i + 1], cfg);

    CLI::App app{"spectral laboratory for truncated focusing Gibbs measures"};
    app.require_subcommand(0, 1);
    std::string configDummy;
    app.add_option("--config", configDummy, "JSON config file (flags override its values)");

    std::vector<CLI::App*> subs;
    for (const std::string& name : kCommands) {
        CLI::App* sub = app.add_subcommand(name, "");
        sub->add_option("--config", configDummy, "JSON config file (flags override its values)");
        sub->add_option("--d", cfg.d, "dimension (1..3)")->capture_default_str();
        sub->add_option("--s", cfg.s, "regularity exponent, s > d/2")->capture_default_str();
        sub->add_option("--p", cfg.p, "interaction exponent, p > 2")->capture_default_str();
        sub->add_option("--K", cfg.K, "L^2 cutoff size")->capture_default_str();
        sub->add_flag("--massive", cfg.massive, "use the massive base field");
        sub->add_option("--N", cfg.N, "frequency cutoff");
        sub->add_option("--nList", cfg.nList, "cutoff list")->delimiter(',');
        sub->add_option("--nsamples", cfg.nsamples, "Monte Carlo sample count")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "RNG seed (no entropy is ever drawn elsewhere)")
            ->capture_default_str();
        sub->add_option("--out", cfg.outPath, "output CSV path");
        sub->add_option("--field-out", cfg.fieldOut, "optimizer/sample coefficient CSV path");
        sub->add_option("--tol", cfg.tol, "solver gradient tolerance")->capture_default_str();
        sub->add_option("--boxL", cfg.boxL, "box side for R^d work (0 = per-command default)");
        sub->add_option("--T", cfg.T, "Brownian time steps")->capture_default_str();
        sub->add_option("--beta", cfg.beta, "margin exponent (0 = admissible midpoint)");
        sub->add_option("--threads", cfg.threads, "worker count (bit-stable results)")
            ->capture_default_str();
        sub->add_option("--multistarts", cfg.multistarts, "ascent restarts")->capture_default_str();
        sub->add_option("--maxIter", cfg.maxIter, "solver iteration budget")->capture_default_str();
        sub->add_option("--mode", cfg.mode, "rate: critical|supercritical");
        sub->add_option("--alpha-policy", cfg.alphaPolicy, "schedule|calibrated")
            ->capture_default_str();
        sub->add_flag("--with-upper", cfg.withUpper, "rate: include ckn-upper rows");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::exit(app.exit(e));
        }
        throw UsageError(e.what());
    }
    for (std::size_t i = 0; i < subs.size(); ++i)
        if (subs[i]->parsed()) cfg.command = kCommands[i];
    if (cfg.command.empty()) throw UsageError("no command given; see --help");
    if (cfg.boxL == 0) cfg.boxL = cfg.command == "q" ? 32 : (cfg.d == 1 ? 128 : 16);
    return cfg;
}

int run(const RunConfig& cfg) {
    try {
        const auto& c = cfg.command;
        if (c == "q") return cmd_q(cfg);
        if (c == "ck") return cmd_ck(cfg);
        if (c == "ckn") return cmd_ckn(cfg);
        if (c == "cb") return cmd_cb(cfg);
        if (c == "sample") return cmd_sample(cfg);
        if (c == "zeta-check") return cmd_zeta_check(cfg);
        if (c == "lowerbound") return cmd_lowerbound(cfg);
        if (c == "mc-z") return cmd_mc_z(cfg);
        if (c == "rate") return cmd_rate(cfg);
        throw UsageError("unknown command: " + c);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "precondition error: %s\n", e.what());
        return kExitPrecondition;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return kExitPrecondition;
    } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
}

}  // namespace gibbslab
