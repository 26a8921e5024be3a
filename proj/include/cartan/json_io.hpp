#pragma once

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cartan/certificates.hpp"
#include "cartan/herringbone.hpp"
#include "cartan/matrix.hpp"

namespace cartan {

// Minimal ordered JSON emitter. Floating-point values are printed with 17
// significant digits so identical runs produce identical bytes.
class JsonWriter {
 public:
  std::string str() const { return out_; }

  JsonWriter& begin_object() {
    sep();
    out_ += '{';
    fresh_ = true;
    return *this;
  }
  JsonWriter& end_object() {
    out_ += '}';
    fresh_ = false;
    return *this;
  }
  JsonWriter& begin_array() {
    sep();
    out_ += '[';
    fresh_ = true;
    return *this;
  }
  JsonWriter& end_array() {
    out_ += ']';
    fresh_ = false;
    return *this;
  }
  JsonWriter& key(const std::string& k) {
    sep();
    append_string(k);
    out_ += ':';
    fresh_ = true;
    return *this;
  }
  JsonWriter& value(double v) {
    sep();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out_ += buf;
    return *this;
  }
  JsonWriter& value(int v) { return value(static_cast<long long>(v)); }
  JsonWriter& value(long long v) {
    sep();
    out_ += std::to_string(v);
    return *this;
  }
  JsonWriter& value(std::uint64_t v) {
    sep();
    out_ += std::to_string(v);
    return *this;
  }
  JsonWriter& value(bool v) {
    sep();
    out_ += v ? "true" : "false";
    return *this;
  }
  JsonWriter& value(const std::string& v) {
    sep();
    append_string(v);
    return *this;
  }
  JsonWriter& value(const char* v) { return value(std::string(v)); }

 private:
  void sep() {
    if (!fresh_) out_ += ',';
    fresh_ = false;
  }
  void append_string(const std::string& s) {
    out_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        default: out_ += c;
      }
    }
    out_ += '"';
  }
  std::string out_;
  bool fresh_ = true;
};

inline void write_matrix(JsonWriter& w, const ComplexMatrix& m) {
  w.begin_object();
  w.key("rows").value(m.rows());
  w.key("cols").value(m.cols());
  w.key("re").begin_array();
  for (int i = 0; i < m.rows(); ++i) {
    w.begin_array();
    for (int j = 0; j < m.cols(); ++j) w.value(m(i, j).real());
    w.end_array();
  }
  w.end_array();
  w.key("im").begin_array();
  for (int i = 0; i < m.rows(); ++i) {
    w.begin_array();
    for (int j = 0; j < m.cols(); ++j) w.value(m(i, j).imag());
    w.end_array();
  }
  w.end_array();
  w.end_object();
}

inline void write_rational(JsonWriter& w, const mpq_class& q) {
  w.begin_object();
  w.key("num").value(q.get_num().get_str());
  w.key("den").value(q.get_den().get_str());
  w.end_object();
}

inline void write_exact_matrix(JsonWriter& w, const GaussianRationalMatrix& m) {
  w.begin_object();
  w.key("rows").value(m.rows());
  w.key("cols").value(m.cols());
  w.key("re").begin_array();
  for (int i = 0; i < m.rows(); ++i) {
    w.begin_array();
    for (int j = 0; j < m.cols(); ++j) write_rational(w, m(i, j).re);
    w.end_array();
  }
  w.end_array();
  w.key("im").begin_array();
  for (int i = 0; i < m.rows(); ++i) {
    w.begin_array();
    for (int j = 0; j < m.cols(); ++j) write_rational(w, m(i, j).im);
    w.end_array();
  }
  w.end_array();
  w.end_object();
}

inline void write_int_array(JsonWriter& w, const std::vector<int>& v) {
  w.begin_array();
  for (int x : v) w.value(x);
  w.end_array();
}

inline void write_spec(JsonWriter& w, const TripleSpec& s) {
  w.begin_object();
  w.key("n").value(s.n);
  w.key("lparts");
  write_int_array(w, s.l_parts);
  w.key("hparts");
  write_int_array(w, s.h_parts);
  w.end_object();
}

inline void write_word(JsonWriter& w, const PlaneRotationWord& word) {
  w.begin_array();
  for (const RotationLetter& l : word.letters) {
    w.begin_object();
    w.key("i").value(l.i);
    w.key("j").value(l.j);
    w.key("theta").value(l.theta);
    w.end_object();
  }
  w.end_array();
}

inline void write_normalization(JsonWriter& w, const CaseLabel& label, int n) {
  w.begin_object();
  w.key("permL").begin_array();
  for (int i = 1; i <= n; ++i) w.value(label.flipped ? n + 1 - i : i);
  w.end_array();
  w.key("permH").begin_array();
  for (int i = 1; i <= n; ++i) w.value(label.flipped ? n + 1 - i : i);
  w.end_array();
  w.key("swapped").value(label.swapped);
  w.end_object();
}

inline std::string decomposition_to_json(const DecompositionResult& r) {
  JsonWriter w;
  w.begin_object();
  w.key("case").value(case_name(r.label.c));
  w.key("word");
  write_word(w, r.word);
  w.key("left");
  write_matrix(w, r.left.matrix());
  w.key("right");
  write_matrix(w, r.right.matrix());
  w.key("residual").value(r.residual);
  w.key("normalization");
  write_normalization(w, r.label, r.word.n);
  w.end_object();
  return w.str();
}

inline std::string report_to_json(const VerificationReport& rep) {
  JsonWriter w;
  w.begin_object();
  w.key("residual").value(rep.residual);
  w.key("left_off_block").value(rep.left_off_block);
  w.key("right_off_block").value(rep.right_off_block);
  w.key("word_orthogonality").value(rep.word_orthogonality);
  w.key("word_length").value(rep.word_length);
  w.key("expected_word_length").value(rep.expected_word_length);
  w.key("planes_in_range").value(rep.planes_in_range);
  w.key("residual_ok").value(rep.residual_ok);
  w.key("left_ok").value(rep.left_ok);
  w.key("right_ok").value(rep.right_ok);
  w.key("orthogonality_ok").value(rep.orthogonality_ok);
  w.key("length_ok").value(rep.length_ok);
  w.key("pass").value(rep.pass);
  w.end_object();
  return w.str();
}

inline void write_poly_exact(JsonWriter& w, const ExactPolynomial& p) {
  w.begin_array();
  for (const GaussianRational& c : p.coeffs) {
    w.begin_object();
    w.key("re");
    write_rational(w, c.re);
    w.key("im");
    write_rational(w, c.im);
    w.end_object();
  }
  w.end_array();
}

inline std::string certificate_to_json(const NonSurjectivityCertificate& c) {
  JsonWriter w;
  w.begin_object();
  w.key("spec");
  write_spec(w, c.spec);
  w.key("swapped").value(c.swapped);
  w.key("witness").value(c.witness);
  w.key("partition");
  write_int_array(w, c.partition);
  w.key("multiplicities");
  write_int_array(w, c.multiplicities);
  w.key("J");
  write_exact_matrix(w, c.j_matrix);
  w.key("X");
  write_exact_matrix(w, c.x_matrix);
  w.key("loop");
  write_int_array(w, c.loop.indices);
  w.key("z").begin_object();
  w.key("re").value(c.z.re.get_str());
  w.key("im").value(c.z.im.get_str());
  w.end_object();
  w.key("charpoly_exact");
  write_poly_exact(w, c.charpoly_exact);
  w.key("epsilon").value(c.epsilon);
  w.key("charpoly_numeric").begin_array();
  for (const cplx& z : c.charpoly_numeric.coeffs) {
    w.begin_object();
    w.key("re").value(z.real());
    w.key("im").value(z.imag());
    w.end_object();
  }
  w.end_array();
  w.key("flagged_index").value(c.flagged_index);
  w.end_object();
  return w.str();
}

// ---- parsing ----

inline double rational_or_float(const nlohmann::json& v) {
  if (v.is_object()) {
    const mpq_class num(v.at("num").get<std::string>());
    const mpq_class den(v.at("den").get<std::string>());
    return mpq_class(num / den).get_d();
  }
  return v.get<double>();
}

inline ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (static_cast<int>(re.size()) != rows || static_cast<int>(im.size()) != rows)
    throw IoError("matrix JSON row count mismatch");
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(re[i].size()) != cols || static_cast<int>(im[i].size()) != cols)
      throw IoError("matrix JSON column count mismatch");
    for (int c = 0; c < cols; ++c)
      m(i, c) = cplx(rational_or_float(re[i][c]), rational_or_float(im[i][c]));
  }
  if (!m.is_finite()) throw IoError("matrix JSON has non-finite entries");
  return m;
}

inline Case case_from_name(const std::string& s) {
  if (s == "0") return Case::Zero;
  if (s == "I") return Case::I;
  if (s == "II") return Case::II;
  if (s == "III") return Case::III;
  if (s == "I'") return Case::IPrime;
  if (s == "II'") return Case::IIPrime;
  if (s == "III'") return Case::IIIPrime;
  if (s == "NotSurjective") return Case::NotSurjective;
  throw IoError("unknown case name: " + s);
}

inline DecompositionResult decomposition_from_json(const nlohmann::json& j,
                                                   const Tolerances& tol = default_tolerances()) {
  DecompositionResult r;
  ComplexMatrix left = matrix_from_json(j.at("left"));
  ComplexMatrix right = matrix_from_json(j.at("right"));
  const int n = left.rows();
  r.word.n = n;
  for (const auto& l : j.at("word"))
    r.word.letters.push_back(
        {l.at("i").get<int>(), l.at("j").get<int>(), l.at("theta").get<double>()});
  r.label.c = case_from_name(j.at("case").get<std::string>());
  if (j.contains("normalization")) {
    const auto& nm = j.at("normalization");
    r.label.swapped = nm.value("swapped", false);
    if (nm.contains("permL") && nm.at("permL").size() >= 1)
      r.label.flipped = nm.at("permL")[0].get<int>() != 1;
  }
  r.residual = j.value("residual", 0.0);
  r.left = UnitaryMatrix::from_matrix(std::move(left), tol);
  r.right = UnitaryMatrix::from_matrix(std::move(right), tol);
  return r;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

}  // namespace cartan
