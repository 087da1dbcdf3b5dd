#pragma once

#include <string>

#include "ymsym/poly_symbol.hpp"

namespace ymsym {

/// Variable naming convention used by the text grammar.
enum class Chart { complex_pair, real_pair };  // zb<k>/z<k> vs a<k>/e<k>

struct ParsedSymbol {
    PolySymbol symbol;
    Chart chart;
};

/// Parses the plain-text grammar: terms like "2.5 * zb1^2 * z1 * z2" joined
/// by + and -. Variables are zb<k> and z<k> (complex chart) or a<k> and e<k>
/// (real chart); charts cannot be mixed. "i" is the imaginary unit, "2.5i"
/// an imaginary coefficient. Indices are 1-based. With num_vars = 0 the
/// variable count is the largest index seen.
ParsedSymbol parse_symbol(const std::string& text, int num_vars = 0);

std::string to_text(const PolySymbol& sym, Chart chart = Chart::complex_pair);

/// {"num_vars":…, "ordering":…, "terms":[{"zbar":[…],"z":[…],"re":…,"im":…}]}
std::string symbol_to_json(const PolySymbol& sym);

}  // namespace ymsym
