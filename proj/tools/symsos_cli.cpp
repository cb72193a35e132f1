// symsos: symmetry-reduced SOS lower bounds with exact certificates.
#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "symsos/symsos.hpp"

using namespace symsos;

namespace {

constexpr int kOk = 0, kUsage = 1, kNoCert = 2, kVerifyFailed = 3;

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  std::string line, out;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    out += line + " ";
  }
  return out;
}

std::vector<long> parse_schedule(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stol(item));
  if (out.empty()) throw Error("empty denominator schedule");
  return out;
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void write_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << j.dump(1) << "\n";
}

struct BoundArgs {
  std::string group, poly_file, expr, cert_out, schedule = "100,1000,10000,1000000", vars;
  bool round = false, plain = false, no_facial = false, verbose = false, feasibility = false;
  double tol = 1e-8;
  int max_iter = 200;
};

int run_bound(const BoundArgs& a) {
  auto t0 = std::chrono::steady_clock::now();
  std::string text = a.expr.empty() ? read_text(a.poly_file) : a.expr;
  PipelineOptions opt;
  opt.solver.tol = a.tol;
  opt.solver.max_iter = a.max_iter;
  opt.solver.verbose = a.verbose;
  opt.facial = !a.no_facial;
  Objective obj = a.feasibility ? Objective::Feasibility : Objective::MaximizeLambda;
  Certificate cert;
  if (a.plain) {
    std::vector<std::string> vars = split_names(a.vars);
    if (vars.empty() && !a.group.empty()) vars = presentation(catalog(a.group)).variables;
    if (vars.empty()) throw Error("--plain needs --vars or --group");
    Polynomial f = parse_polynomial(text, vars);
    cert = plain_gram(f, obj, opt);
    cert.variables = vars;
  } else {
    if (a.group.empty()) throw Error("--group is required unless --plain is given");
    auto cat = catalog(a.group);
    auto pres = presentation(cat);
    Polynomial f = parse_polynomial(text, pres.variables);
    GeneratorBundle bundle = algorithm_one(cat, f.degree().value() / 2);
    cert = algorithm_two(f, bundle, obj, opt);
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << "mode: " << to_string(cert.mode) << "\n";
  std::cout << "blocks:";
  for (const auto& b : cert.blocks) std::cout << " " << (b.label.empty() ? "Q" : b.label) << ":" << b.gram_float.rows();
  std::cout << "\n";
  std::cout << "solver: " << cert.status << " gap " << cert.gap << " min-eig " << cert.min_eigenvalue << "\n";
  if (obj == Objective::MaximizeLambda) {
    std::cout.precision(12);
    std::cout << "lambda = " << cert.lambda_float;
    if (auto g = guess_lambda(cert)) std::cout << "  (close to " << g->get_str() << ")";
    std::cout << "\n";
  } else {
    std::cout << "feasible at lambda = 0\n";
  }
  Certificate out = cert;
  if (a.round) {
    out = certify(cert, parse_schedule(a.schedule), opt.solver);
    auto rep = verify_certificate(out, out.f);
    std::cout << "certified lambda = " << out.lambda.get_str() << " (denominator bound " << out.denominator << ")\n";
    std::cout << "exact verification: " << (rep.ok ? "ok" : "FAILED: " + rep.message) << "\n";
    if (!rep.ok) return kVerifyFailed;
  }
  std::cout << "time: " << secs << " s\n";
  if (!a.cert_out.empty()) {
    write_json(to_json(out), a.cert_out);
    std::cout << "certificate written to " << a.cert_out << "\n";
  }
  return kOk;
}

int run_molien(const std::string& group, int dmax) {
  auto cat = catalog(group);
  std::cout << render_molien_table(molien_table(cat, dmax));
  return kOk;
}

int run_census(int n, int degree) {
  if (degree % 2) throw Error("census needs an even degree");
  auto c = even_form_census(n, degree / 2);
  std::cout << "c2n:" << n << " forms of degree " << degree << ": unreduced " << c.unreduced << "x" << c.unreduced
            << "\n";
  for (const auto& e : c.entries)
    std::cout << "  type " << e.type << ": " << e.count << " block(s) of size " << e.block_size << "\n";
  return kOk;
}

int run_generators(const std::string& group, int cap, const std::string& json_out) {
  auto cat = catalog(group);
  GeneratorBundle b = algorithm_one(cat, cap);
  const auto& p = b.presentation;
  nlohmann::json j;
  j["group"] = group;
  std::cout << "group " << group << " (order " << cat.action.order() << ")\n";
  for (int i = 0; i < p.ntheta(); ++i) {
    std::cout << "  " << p.theta_names[i] << " = " << render_polynomial(p.theta[i], p.variables) << "\n";
    j["theta"].push_back({{"name", p.theta_names[i]}, {"poly", render_polynomial(p.theta[i], p.variables)}});
  }
  for (int k = 0; k < p.neta(); ++k) {
    std::cout << "  " << p.eta_names[k] << " = " << render_polynomial(p.eta[k], p.variables) << "\n";
    j["eta"].push_back({{"name", p.eta_names[k]}, {"poly", render_polynomial(p.eta[k], p.variables)}});
  }
  for (const auto& s : p.syzygies) {
    std::cout << "  syzygy: " << render_polynomial(s, p.symbol_names()) << " = 0\n";
    j["syzygies"].push_back(render_polynomial(s, p.symbol_names()));
  }
  for (std::size_t i = 0; i < b.bases.size(); ++i) {
    const auto& basis = b.bases[i];
    std::cout << "irrep " << basis.label << " (dim " << basis.dim << (basis.complex_type ? ", complex type" : "")
              << (basis.complete ? "" : ", search capped") << "): rank " << basis.rank() << "\n";
    nlohmann::json ij;
    ij["label"] = basis.label;
    ij["dim"] = basis.dim;
    ij["complete"] = basis.complete;
    for (const auto& v : basis.vectors) {
      std::cout << "  b = (";
      nlohmann::json vj = nlohmann::json::array();
      for (std::size_t c = 0; c < v.size(); ++c) {
        std::cout << (c ? ", " : "") << render_polynomial(v[c], p.variables);
        vj.push_back(render_polynomial(v[c], p.variables));
      }
      std::cout << ")\n";
      ij["generators"].push_back(vj);
    }
    const auto& pi = b.pis[i];
    for (int r = 0; r < pi.size(); ++r) {
      std::cout << "  Pi[" << r + 1 << "] = [";
      nlohmann::json rj = nlohmann::json::array();
      for (int c = 0; c < pi.size(); ++c) {
        std::cout << (c ? ", " : "") << render_invariant(pi.entries[r][c], p);
        rj.push_back(render_invariant(pi.entries[r][c], p));
      }
      std::cout << "]\n";
      ij["pi"].push_back(rj);
    }
    j["irreps"].push_back(ij);
  }
  if (!json_out.empty()) write_json(j, json_out);
  return kOk;
}

int run_verify(const std::string& cert_path, const std::string& poly_file) {
  std::ifstream in(cert_path);
  if (!in) throw Error("cannot read '" + cert_path + "'");
  Certificate c = certificate_from_json(nlohmann::json::parse(in));
  Polynomial f = c.f;
  if (!poly_file.empty()) {
    f = parse_polynomial(read_text(poly_file), c.variables);
    if (f != c.f) {
      std::cout << "verification FAILED: certificate is for a different polynomial\n";
      return kVerifyFailed;
    }
  }
  auto rep = verify_certificate(c, f);
  if (!rep.ok) {
    std::cout << "verification FAILED: " << rep.message << "\n";
    return kVerifyFailed;
  }
  std::cout << "verification ok: f - (" << c.lambda.get_str() << ") is a sum of squares (" << to_string(c.mode)
            << ", " << c.blocks.size() << " block(s))\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symsos: symmetry-reduced sums of squares with exact certificates"};
  app.require_subcommand(1);

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "SOS lower bound for an invariant polynomial");
  bound->add_option("--group", ba.group, "group spec, e.g. dihedral:4, symmetric:3, c2n:4");
  auto* pf = bound->add_option("--poly", ba.poly_file, "file holding the polynomial");
  auto* ex = bound->add_option("--expr", ba.expr, "polynomial given inline");
  pf->excludes(ex);
  bound->add_flag("--round", ba.round, "round to an exact certificate and verify it");
  bound->add_option("--schedule", ba.schedule, "comma-separated denominator bounds");
  bound->add_option("--cert", ba.cert_out, "write the certificate (JSON) here");
  bound->add_flag("--plain", ba.plain, "plain Gram formulation, no symmetry");
  bound->add_option("--vars", ba.vars, "variable names for --plain, comma separated");
  bound->add_flag("--feasibility", ba.feasibility, "test SOS at lambda = 0 instead of maximizing");
  bound->add_flag("--no-facial", ba.no_facial, "skip the facial reduction pre-pass");
  bound->add_option("--tol", ba.tol, "solver tolerance");
  bound->add_option("--max-iter", ba.max_iter, "solver iteration cap");
  bound->add_flag("-v,--verbose", ba.verbose, "print solver iterations");

  std::string mgroup;
  int dmax = 10;
  auto* molien = app.add_subcommand("molien", "isotypic dimensions by degree from Molien series");
  molien->add_option("--group", mgroup, "group spec")->required();
  molien->add_option("--dmax", dmax, "largest degree")->check(CLI::Range(0, 200));

  int cn = 10, cdeg = 8;
  auto* census = app.add_subcommand("census", "Gram block census for sign-symmetric forms");
  census->add_option("--n", cn, "number of variables")->check(CLI::Range(1, 12));
  census->add_option("--degree", cdeg, "form degree (even)");

  std::string ggroup, gjson;
  int cap = -1;
  auto* gens = app.add_subcommand("generators", "invariants, module generators and Pi matrices");
  gens->add_option("--group", ggroup, "group spec")->required();
  gens->add_option("--cap", cap, "degree cap for the equivariant search");
  gens->add_option("--json", gjson, "also write JSON here");

  std::string cert_path, vpoly;
  auto* verify = app.add_subcommand("verify", "replay a certificate in exact arithmetic");
  verify->add_option("--cert", cert_path, "certificate file")->required();
  verify->add_option("--poly", vpoly, "check against this polynomial");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  try {
    if (*bound) {
      if (ba.poly_file.empty() && ba.expr.empty()) {
        std::cerr << "bound: give --poly or --expr\n";
        return kUsage;
      }
      return run_bound(ba);
    }
    if (*molien) return run_molien(mgroup, dmax);
    if (*census) return run_census(cn, cdeg);
    if (*gens) return run_generators(ggroup, cap, gjson);
    if (*verify) return run_verify(cert_path, vpoly);
  } catch (const NoCertificate& e) {
    std::cerr << "no certificate: " << e.what() << "\n";
    return kNoCert;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
