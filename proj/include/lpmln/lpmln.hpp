// lpmln/lpmln.hpp - umbrella header.

#ifndef LPMLN_LPMLN_HPP
#define LPMLN_LPMLN_HPP

#include "lpmln/error.hpp"
#include "lpmln/syntax.hpp"
#include "lpmln/semantics.hpp"
#include "lpmln/weights.hpp"
#include "lpmln/random.hpp"
#include "lpmln/equivalence.hpp"

#endif  // LPMLN_LPMLN_HPP
