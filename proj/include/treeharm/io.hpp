#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "treeharm/abel.hpp"
#include "treeharm/engine.hpp"
#include "treeharm/radial_kernel.hpp"
#include "treeharm/zline.hpp"

namespace treeharm {

/// Missing files, unreadable streams and malformed documents.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"q": int, "values": [[re, im], ...]} indexed from d = 0. Bare numbers are
/// accepted as real values.
RadialKernel parse_kernel_json(const std::string& text);
RadialKernel load_kernel(const std::string& path);
nlohmann::json kernel_to_json(const RadialKernel& k);

void write_symbol_csv(const TorusSymbol& symbol, std::ostream& out);  // s,re,im
void write_zkernel_csv(const ZKernel& F, std::ostream& out);          // d,re,im
void write_abel_csv(const AbelSequence& a, std::ostream& out);        // j,re,im

nlohmann::json to_json(const NormInterval& interval);
nlohmann::json to_json(const TheoremReport& report);

}  // namespace treeharm
