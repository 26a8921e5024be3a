// Command-line front end: classification, decomposition, verification,
// certification, partition sweeps and Haar sampling with reproducible seeds.
//
// Exit codes: 0 success, 2 verification failure, 3 spec on the wrong side of
// the classification (decompose on a non-surjective spec, certify on a
// surjective one), 4 I/O or parse error.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "cartan/cartan.hpp"

namespace {

using namespace cartan;

struct CommonOpts {
  int n = 0;
  std::vector<int> lparts, hparts;
  bool haar = false;
  std::uint64_t seed = 0;
  int samples = 1;
  std::string in_path, g_path, out_path;
  bool exact_only = false;
  double tol_residual = -1.0;
  double tol_cert = -1.0;

  Tolerances tolerances() const {
    Tolerances t;
    if (tol_residual > 0) t.residual = tol_residual;
    if (tol_cert > 0) t.cert = tol_cert;
    return t;
  }

  TripleSpec spec() const {
    TripleSpec s{n, lparts, hparts};
    s.validate();
    return s;
  }
};

void add_spec_flags(CLI::App* cmd, CommonOpts& o, bool need_spec = true) {
  auto* n = cmd->add_option("--n", o.n, "ambient dimension");
  auto* lp = cmd->add_option("--lparts", o.lparts, "L-side block sizes, comma separated")
                 ->delimiter(',');
  auto* hp = cmd->add_option("--hparts", o.hparts, "H-side block sizes, comma separated")
                 ->delimiter(',');
  if (need_spec) {
    n->required();
    lp->required();
    hp->required();
  }
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.out_path.empty())
    std::cout << text << "\n";
  else
    write_text_file(o.out_path, text + "\n");
}

UnitaryMatrix load_input_matrix(const CommonOpts& o, const Tolerances& tol) {
  if (o.haar) return haar_unitary(o.n, o.seed, tol);
  const std::string path = !o.g_path.empty() ? o.g_path : o.in_path;
  if (path.empty()) throw IoError("need --haar or an input matrix file");
  nlohmann::json j = nlohmann::json::parse(read_text_file(path));
  return UnitaryMatrix::from_matrix(matrix_from_json(j), tol);
}

int run_classify(const CommonOpts& o) {
  const CaseLabel label = classify(o.spec());
  JsonWriter w;
  w.begin_object();
  w.key("case").value(case_name(label.c));
  if (label.c != Case::NotSurjective) {
    w.key("swapped").value(label.swapped);
    w.key("flipped").value(label.flipped);
    const BShape shape = b_shape(label.c, o.spec());
    w.key("word_length").value(shape.length);
  }
  w.end_object();
  emit(o, w.str());
  return 0;
}

int run_decompose(const CommonOpts& o) {
  const Tolerances tol = o.tolerances();
  const TripleSpec spec = o.spec();
  UnitaryMatrix g = load_input_matrix(o, tol);
  DecompositionResult r = decompose(g, spec, tol);
  emit(o, decomposition_to_json(r));
  const VerificationReport rep = verify(g, spec, r, tol);
  return rep.pass ? 0 : 2;
}

int run_verify(const CommonOpts& o) {
  const Tolerances tol = o.tolerances();
  const TripleSpec spec = o.spec();
  UnitaryMatrix g = load_input_matrix(o, tol);
  if (o.in_path.empty()) throw IoError("verify needs --in with a decomposition JSON");
  nlohmann::json j = nlohmann::json::parse(read_text_file(o.in_path));
  DecompositionResult r = decomposition_from_json(j, tol);
  const VerificationReport rep = verify(g, spec, r, tol);
  emit(o, report_to_json(rep));
  return rep.pass ? 0 : 2;
}

int run_certify(const CommonOpts& o) {
  const Tolerances tol = o.tolerances();
  if (o.exact_only) {
    // exact part only: skip the numeric epsilon search
    const TripleSpec spec = o.spec();
    if (classify(spec).c != Case::NotSurjective)
      throw SpecActuallySurjective("spec admits a decomposition; nothing to certify");
    NonSurjectivityCertificate c = certify_nonsurjective(spec, GaussianRational::i(), tol);
    c.epsilon = 0.0;
    c.charpoly_numeric = PolynomialCoefficients{};
    emit(o, certificate_to_json(c));
    return 0;
  }
  NonSurjectivityCertificate c = certify_nonsurjective(o.spec(), GaussianRational::i(), tol);
  emit(o, certificate_to_json(c));
  return 0;
}

int run_sample(const CommonOpts& o) {
  const Tolerances tol = o.tolerances();
  if (o.n < 1) throw IoError("sample needs --n >= 1");
  JsonWriter w;
  if (o.samples == 1) {
    write_matrix(w, haar_unitary(o.n, o.seed, tol).matrix());
  } else {
    w.begin_array();
    for (int s = 0; s < o.samples; ++s)
      write_matrix(w, haar_unitary(o.n, o.seed + s, tol).matrix());
    w.end_array();
  }
  emit(o, w.str());
  return 0;
}

// all compositions of n with at least two parts, in cut-mask order
std::vector<std::vector<int>> compositions(int n) {
  std::vector<std::vector<int>> out;
  for (std::uint32_t mask = 1; mask < (1u << (n - 1)); ++mask) {
    std::vector<int> parts;
    int run = 1;
    for (int pos = 0; pos < n - 1; ++pos) {
      if (mask & (1u << pos)) {
        parts.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    parts.push_back(run);
    out.push_back(std::move(parts));
  }
  return out;
}

int run_sweep(const CommonOpts& o) {
  const Tolerances tol = o.tolerances();
  if (o.n < 2) throw IoError("sweep needs --n >= 2");
  const auto comps = compositions(o.n);
  int surjective = 0, certified = 0, failures = 0;
  JsonWriter w;
  w.begin_object();
  w.key("n").value(o.n);
  w.key("samples").value(o.samples);
  w.key("specs").begin_array();
  for (const auto& lp : comps) {
    for (const auto& hp : comps) {
      const TripleSpec spec{o.n, lp, hp};
      const CaseLabel label = classify(spec);
      w.begin_object();
      w.key("lparts");
      write_int_array(w, spec.l_parts);
      w.key("hparts");
      write_int_array(w, spec.h_parts);
      w.key("case").value(case_name(label.c));
      if (label.c != Case::NotSurjective) {
        ++surjective;
        double worst = 0.0;
        bool ok = true;
        for (int s = 0; s < o.samples; ++s) {
          UnitaryMatrix g = haar_unitary(o.n, o.seed + s, tol);
          DecompositionResult r = decompose(g, spec, tol);
          VerificationReport rep = verify(g, spec, r, tol);
          worst = std::max(worst, rep.residual);
          ok = ok && rep.pass;
        }
        if (!ok) ++failures;
        w.key("max_residual").value(worst);
        w.key("pass").value(ok);
      } else {
        ++certified;
        bool ok = true;
        try {
          NonSurjectivityCertificate c = certify_nonsurjective(spec, GaussianRational::i(), tol);
          w.key("witness").value(c.witness);
          w.key("epsilon").value(c.epsilon);
        } catch (const Error& e) {
          ok = false;
          ++failures;
          w.key("error").value(std::string(e.what()));
        }
        w.key("pass").value(ok);
      }
      w.end_object();
    }
  }
  w.end_array();
  w.key("totals").begin_object();
  w.key("surjective").value(surjective);
  w.key("not_surjective").value(certified);
  w.key("failures").value(failures);
  w.end_object();
  w.end_object();
  emit(o, w.str());
  return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized Cartan decompositions for unitary triples"};
  app.require_subcommand(1);

  CommonOpts o;
  auto add_io = [&](CLI::App* cmd) {
    cmd->add_flag("--haar", o.haar, "sample the input with Haar measure");
    cmd->add_option("--seed", o.seed, "PRNG seed");
    cmd->add_option("--samples", o.samples, "number of samples");
    cmd->add_option("--in", o.in_path, "input JSON path");
    cmd->add_option("--gin", o.g_path, "matrix JSON path (verify)");
    cmd->add_option("--out", o.out_path, "output path (default stdout)");
    cmd->add_option("--tol-residual", o.tol_residual, "residual tolerance per unit dimension");
    cmd->add_option("--tol-cert", o.tol_cert, "certificate imaginary-part threshold");
    cmd->add_flag("--exact", o.exact_only, "certify: emit the exact part only");
  };

  CLI::App* classify_cmd = app.add_subcommand("classify", "evaluate the case table");
  add_spec_flags(classify_cmd, o);
  add_io(classify_cmd);

  CLI::App* decompose_cmd = app.add_subcommand("decompose", "compute g = l b h");
  add_spec_flags(decompose_cmd, o);
  add_io(decompose_cmd);

  CLI::App* verify_cmd = app.add_subcommand("verify", "recheck a decomposition");
  add_spec_flags(verify_cmd, o);
  add_io(verify_cmd);

  CLI::App* certify_cmd = app.add_subcommand("certify", "produce a non-surjectivity certificate");
  add_spec_flags(certify_cmd, o);
  add_io(certify_cmd);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "all partition pairs for a given n");
  sweep_cmd->add_option("--n", o.n, "ambient dimension")->required();
  add_io(sweep_cmd);

  CLI::App* sample_cmd = app.add_subcommand("sample", "write Haar unitaries");
  sample_cmd->add_option("--n", o.n, "ambient dimension")->required();
  add_io(sample_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 4;
  }

  try {
    if (*classify_cmd) return run_classify(o);
    if (*decompose_cmd) return run_decompose(o);
    if (*verify_cmd) return run_verify(o);
    if (*certify_cmd) return run_certify(o);
    if (*sweep_cmd) return run_sweep(o);
    if (*sample_cmd) return run_sample(o);
  } catch (const NotSurjectiveSpec& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const SpecActuallySurjective& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 4;
  } catch (const InvalidSpec& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 4;
}
