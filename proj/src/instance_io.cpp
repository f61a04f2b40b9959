#include "dkplab/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "dkplab/bnb.hpp"
#include "dkplab/error.hpp"

namespace dkplab {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

std::string bound_str(const OptRational& b, const char* inf) { return b ? to_string(*b) : inf; }

std::string int_line(const std::string& key, const IntVec& v) {
  std::string s = key;
  for (const auto& x : v) s += " " + to_string(x);
  return s + "\n";
}

std::string matrix_block(const std::string& key, const IntMat& m) {
  std::ostringstream os;
  os << key << " " << m.rows() << " " << m.cols() << "\n";
  if (m.cols() == 0) return os.str();
  for (std::size_t i = 0; i < m.rows(); ++i) os << join(m.row(i)) << "\n";
  return os.str();
}

// Line cursor that skips blank and '#' lines except inside matrix blocks.
class Reader {
 public:
  explicit Reader(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines_.push_back(line);
    }
  }

  bool done() {
    skip();
    return pos_ >= lines_.size();
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::kParse, "line " + std::to_string(pos_) + ": " + what);
  }

  std::string raw() {
    skip();
    if (pos_ >= lines_.size()) fail("unexpected end of input");
    return lines_[pos_++];
  }

  std::string peek_key() {
    skip();
    if (pos_ >= lines_.size()) return "";
    auto t = split_ws(lines_[pos_]);
    return t.empty() ? "" : t[0];
  }

  // Tokens after the expected key.
  std::vector<std::string> keyed(const std::string& key) {
    auto t = split_ws(raw());
    if (t.empty() || t[0] != key) fail("expected '" + key + "'");
    t.erase(t.begin());
    return t;
  }

  std::string rest_of(const std::string& key) {
    std::string line = raw();
    if (line.rfind(key, 0) != 0 || (line.size() > key.size() && line[key.size()] != ' ')) {
      fail("expected '" + key + "'");
    }
    return line.size() > key.size() ? line.substr(key.size() + 1) : "";
  }

  std::size_t pos() const { return pos_; }
  const std::vector<std::string>& lines() const { return lines_; }

 private:
  void skip() {
    while (pos_ < lines_.size()) {
      auto t = split_ws(lines_[pos_]);
      if (!t.empty() && t[0][0] != '#') break;
      ++pos_;
    }
  }

  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
};

std::size_t parse_size(Reader& rd, const std::string& s) {
  Integer z = parse_integer(s);
  if (z < 0 || z > 1000000) rd.fail("bad size '" + s + "'");
  return z.get_ui();
}

std::size_t one_size(Reader& rd, const std::string& key) {
  auto t = rd.keyed(key);
  if (t.size() != 1) rd.fail("'" + key + "' takes one value");
  return parse_size(rd, t[0]);
}

IntVec int_tokens(Reader& rd, const std::vector<std::string>& t, std::size_t n) {
  if (t.size() != n) rd.fail("expected " + std::to_string(n) + " values");
  IntVec v;
  for (const auto& s : t) v.push_back(parse_integer(s));
  return v;
}

Integer one_int(Reader& rd, const std::string& key) {
  auto t = rd.keyed(key);
  if (t.size() != 1) rd.fail("'" + key + "' takes one value");
  return parse_integer(t[0]);
}

std::vector<OptRational> bound_tokens(Reader& rd, const std::vector<std::string>& t, std::size_t m,
                                      const char* inf) {
  if (t.size() != m) rd.fail("expected " + std::to_string(m) + " bounds");
  std::vector<OptRational> v;
  for (const auto& s : t) v.push_back(s == inf ? OptRational() : OptRational(parse_rational(s)));
  return v;
}

IntMat matrix_rows(Reader& rd, std::size_t rows, std::size_t cols) {
  IntMat m(rows, cols);
  if (cols == 0) return m;
  for (std::size_t i = 0; i < rows; ++i) m.set_row(i, int_tokens(rd, split_ws(rd.raw()), cols));
  return m;
}

IntMat matrix_block(Reader& rd, const std::string& key) {
  auto t = rd.keyed(key);
  if (t.size() != 2) rd.fail("'" + key + "' needs rows and cols");
  const std::size_t rows = parse_size(rd, t[0]), cols = parse_size(rd, t[1]);
  return matrix_rows(rd, rows, cols);
}

std::string tail(const IpInstance& inst) {
  std::string s;
  if (inst.objective) {
    s += int_line(std::string("objective ") + (inst.objective->sense == Sense::kMax ? "max" : "min"),
                  inst.objective->c);
  }
  if (inst.provenance) {
    s += int_line("p", inst.provenance->p);
    s += int_line("r", inst.provenance->r);
    s += "M " + to_string(inst.provenance->m) + "\n";
    s += "k " + to_string(inst.provenance->k) + "\n";
  }
  return s;
}

void read_tail(Reader& rd, IpInstance& inst) {
  const std::size_t n = inst.cols();
  if (rd.peek_key() == "objective") {
    auto t = rd.keyed("objective");
    if (t.empty() || (t[0] != "min" && t[0] != "max")) rd.fail("objective needs min or max");
    Objective obj;
    obj.sense = t[0] == "max" ? Sense::kMax : Sense::kMin;
    obj.c = int_tokens(rd, {t.begin() + 1, t.end()}, n);
    inst.objective = obj;
  }
  if (rd.peek_key() == "p") {
    Provenance pv;
    pv.p = int_tokens(rd, rd.keyed("p"), n);
    pv.r = int_tokens(rd, rd.keyed("r"), n);
    pv.m = one_int(rd, "M");
    pv.k = one_int(rd, "k");
    inst.provenance = pv;
  }
}

std::optional<KnapsackForm> as_knapsack(const IpInstance& inst) {
  if (inst.cols() == 0) return std::nullopt;
  try {
    return knapsack_form(inst);
  } catch (const Error&) {
    return std::nullopt;
  }
}

IpInstance read_dkp(Reader& rd) {
  IpInstance inst;
  inst.name = rd.rest_of("name");
  auto form = rd.keyed("form");
  if (form.size() != 1 || (form[0] != "eq" && form[0] != "ineq")) rd.fail("form must be eq or ineq");
  const std::size_t n = one_size(rd, "n");
  if (n == 0) rd.fail("n must be positive");
  IntVec a = int_tokens(rd, rd.keyed("a"), n);
  Integer b1, b2;
  if (form[0] == "eq") {
    b1 = b2 = one_int(rd, "beta");
  } else {
    b1 = one_int(rd, "beta1");
    b2 = one_int(rd, "beta2");
  }
  auto ut = rd.keyed("u");
  if (ut.size() != n) rd.fail("expected " + std::to_string(n) + " upper bounds");
  inst.a = IntMat(n + 1, n);
  inst.a.set_row(0, a);
  inst.lo.push_back(Rational(b1));
  inst.hi.push_back(Rational(b2));
  for (std::size_t j = 0; j < n; ++j) {
    inst.a(j + 1, j) = 1;
    inst.lo.push_back(Rational(0));
    inst.hi.push_back(ut[j] == "inf" ? OptRational() : OptRational(Rational(parse_integer(ut[j]))));
  }
  read_tail(rd, inst);
  return inst;
}

IpInstance read_ip(Reader& rd) {
  IpInstance inst;
  inst.name = rd.rest_of("name");
  const std::size_t n = one_size(rd, "n");
  const std::size_t m = one_size(rd, "m");
  if (!rd.keyed("A").empty()) rd.fail("'A' takes no values");
  inst.a = matrix_rows(rd, m, n);
  inst.lo = bound_tokens(rd, rd.keyed("lo"), m, "-inf");
  inst.hi = bound_tokens(rd, rd.keyed("hi"), m, "inf");
  read_tail(rd, inst);
  return inst;
}

IpInstance read_instance_from(Reader& rd) {
  const std::string header = rd.raw();
  IpInstance inst;
  if (header == "dkp-instance v1") {
    inst = read_dkp(rd);
  } else if (header == "ip-instance v1") {
    inst = read_ip(rd);
  } else {
    rd.fail("unknown header '" + header + "'");
  }
  inst.validate();
  return inst;
}

const char* method_name(ReformMethod m) { return m == ReformMethod::kAhl ? "ahl" : "rangespace"; }

std::string index_line(const std::string& key, const std::vector<std::size_t>& v) {
  std::string s = key;
  for (auto i : v) s += " " + std::to_string(i);
  return s + "\n";
}

}  // namespace

std::string write_instance(const IpInstance& inst) {
  inst.validate();
  std::ostringstream os;
  if (auto kf = as_knapsack(inst)) {
    const bool eq = kf->beta1 == kf->beta2;
    os << "dkp-instance v1\n";
    os << "name " << inst.name << "\n";
    os << "form " << (eq ? "eq" : "ineq") << "\n";
    os << "n " << inst.cols() << "\n";
    os << int_line("a", kf->a);
    if (eq) {
      os << "beta " << kf->beta1 << "\n";
    } else {
      os << "beta1 " << kf->beta1 << "\n";
      os << "beta2 " << kf->beta2 << "\n";
    }
    os << "u";
    for (const auto& u : kf->u) os << " " << (u ? to_string(*u) : "inf");
    os << "\n";
  } else {
    os << "ip-instance v1\n";
    os << "name " << inst.name << "\n";
    os << "n " << inst.cols() << "\n";
    os << "m " << inst.rows() << "\n";
    os << "A\n";
    if (inst.cols() > 0) {
      for (std::size_t i = 0; i < inst.rows(); ++i) os << join(inst.a.row(i)) << "\n";
    }
    os << "lo";
    for (const auto& b : inst.lo) os << " " << bound_str(b, "-inf");
    os << "\nhi";
    for (const auto& b : inst.hi) os << " " << bound_str(b, "inf");
    os << "\n";
  }
  os << tail(inst);
  return os.str();
}

IpInstance read_instance(const std::string& text) {
  Reader rd(text);
  IpInstance inst = read_instance_from(rd);
  if (!rd.done()) rd.fail("trailing content");
  return inst;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kParse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

IpInstance load_instance(const std::string& path) { return read_instance(read_file(path)); }

void save_instance(const std::string& path, const IpInstance& inst) {
  write_file(path, write_instance(inst));
}

std::string write_bundle(const ReformBundle& b) {
  std::ostringstream os;
  os << "reform-bundle v1\n";
  os << "method " << method_name(b.method) << "\n";
  os << "reduction " << (b.reduction == ReductionMethod::kKz ? "kz" : "lll") << "\n";
  if (b.method == ReformMethod::kRangespace) {
    os << matrix_block("U", b.u);
  } else {
    os << matrix_block("V", b.v);
    os << matrix_block("Vstar", b.v_star);
    os << int_line("x_b", b.x_b);
    os << index_line("eq_rows", b.eq_rows);
    os << index_line("kept_rows", b.kept_rows);
  }
  if (b.x_r) os << int_line("x_r", *b.x_r);
  os << "instance\n";
  os << write_instance(b.instance);
  return os.str();
}

ReformBundle read_bundle(const std::string& text) {
  Reader rd(text);
  if (rd.raw() != "reform-bundle v1") rd.fail("expected 'reform-bundle v1'");
  ReformBundle b;
  auto m = rd.keyed("method");
  if (m.size() != 1 || (m[0] != "rangespace" && m[0] != "ahl")) rd.fail("bad method");
  b.method = m[0] == "ahl" ? ReformMethod::kAhl : ReformMethod::kRangespace;
  auto r = rd.keyed("reduction");
  if (r.size() != 1 || (r[0] != "lll" && r[0] != "kz")) rd.fail("bad reduction");
  b.reduction = r[0] == "kz" ? ReductionMethod::kKz : ReductionMethod::kLll;
  if (b.method == ReformMethod::kRangespace) {
    b.u = matrix_block(rd, "U");
  } else {
    b.v = matrix_block(rd, "V");
    b.v_star = matrix_block(rd, "Vstar");
    auto xb = rd.keyed("x_b");
    b.x_b = int_tokens(rd, xb, xb.size());
    for (const auto& s : rd.keyed("eq_rows")) b.eq_rows.push_back(parse_size(rd, s));
    for (const auto& s : rd.keyed("kept_rows")) b.kept_rows.push_back(parse_size(rd, s));
  }
  if (rd.peek_key() == "x_r") {
    auto xr = rd.keyed("x_r");
    b.x_r = int_tokens(rd, xr, xr.size());
  }
  if (!rd.keyed("instance").empty()) rd.fail("'instance' takes no values");
  b.instance = read_instance_from(rd);
  if (!rd.done()) rd.fail("trailing content");
  return b;
}

}  // namespace dkplab
