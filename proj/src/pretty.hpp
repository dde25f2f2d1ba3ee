#ifndef CUBECK_PRETTY_HPP
#define CUBECK_PRETTY_HPP

#include <string>
#include <vector>

#include "term.hpp"

namespace ctt {

// Render a core term in surface syntax. `names` is the context name stack,
// outermost first.
std::string show_term(const Tm& t, std::vector<std::string> names = {});

std::string show_iv_term(const IvPtr& t, const std::vector<std::string>& names);
std::string show_cof_term(const CofPtr& c,
                          const std::vector<std::string>& names);

} // namespace ctt

#endif
