#include "treeharm/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace treeharm {

namespace {

void row(std::ostream& out, const std::string& key, cplx v) {
  out << key << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
}

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

RadialKernel parse_kernel_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(std::string("kernel JSON does not parse: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("q") || !doc.contains("values")) {
    throw IoError("kernel JSON needs the fields \"q\" and \"values\"");
  }
  if (!doc["q"].is_number_integer()) throw IoError("kernel field \"q\" must be an integer");
  const auto& vals = doc["values"];
  if (!vals.is_array() || vals.empty()) throw IoError("kernel field \"values\" must be a nonempty array");
  std::vector<cplx> values;
  for (const auto& v : vals) {
    if (v.is_number()) {
      values.emplace_back(v.get<double>(), 0.0);
    } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
      values.emplace_back(v[0].get<double>(), v[1].get<double>());
    } else {
      throw IoError("kernel values must be numbers or [re, im] pairs");
    }
  }
  try {
    return RadialKernel(TreeParams(doc["q"].get<int>()), std::move(values));
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("invalid kernel: ") + e.what());
  }
}

RadialKernel load_kernel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open kernel file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_kernel_json(buf.str());
}

nlohmann::json kernel_to_json(const RadialKernel& k) {
  nlohmann::json vals = nlohmann::json::array();
  for (const auto& v : k.values()) vals.push_back({v.real(), v.imag()});
  return {{"q", k.q()}, {"values", vals}};
}

void write_symbol_csv(const TorusSymbol& symbol, std::ostream& out) {
  out << "s,re,im\n";
  for (int n = 0; n < symbol.size(); ++n) row(out, format_double(symbol.node(n)), symbol.samples[n]);
}

void write_zkernel_csv(const ZKernel& F, std::ostream& out) {
  out << "d,re,im\n";
  for (int d = F.d_min(); d <= F.d_max(); ++d) row(out, std::to_string(d), F(d));
}

void write_abel_csv(const AbelSequence& a, std::ostream& out) {
  out << "j,re,im\n";
  for (int j = -a.radius(); j <= a.radius(); ++j) row(out, std::to_string(j), a(j));
}

nlohmann::json to_json(const NormInterval& interval) {
  return {{"lower", interval.lower},
          {"upper", interval.upper},
          {"lower_method", interval.lower_method},
          {"upper_method", interval.upper_method}};
}

nlohmann::json to_json(const TheoremReport& r) {
  nlohmann::json j;
  j["q"] = r.q;
  j["p"] = r.p;
  j["R"] = r.R;
  j["branch"] = r.branch;
  j["step1_upper"] = optional_number(r.step1_upper);
  j["step2_upper"] = optional_number(r.step2_upper);
  j["total_upper"] = r.total_upper;
  j["compression_lower"] = r.compression_lower;
  j["compression_witness"] = r.compression_witness;
  j["symbol_lower"] = r.symbol.lower;
  j["symbol_upper"] = r.symbol.upper;
  j["symbol_interval"] = to_json(r.symbol);
  j["weyl_residual"] = r.weyl_residual;
  j["grid_N"] = r.grid_N;
  j["dictionary_version"] = r.dictionary_version;
  j["slack"] = r.slack;
  j["ratio_lower_to_symbol_upper"] = r.ratio_lower_to_symbol_upper;
  j["ratio_upper_to_symbol_lower"] = r.ratio_upper_to_symbol_lower;
  j["sandwich_ok"] = r.sandwich_ok;
  return j;
}

}  // namespace treeharm
