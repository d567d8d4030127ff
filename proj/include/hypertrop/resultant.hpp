#pragma once

#include <string>
#include <vector>

#include "hypertrop/mpoly.hpp"

namespace hypertrop {

enum class ResultantMethod { Auto, SubresultantPRS, Norm };

// Res_var(f, g) as a polynomial in the remaining variables. Auto uses the
// norm computation when one leading coefficient is a nonzero element of
// Q(t), otherwise the subresultant PRS.
MPoly resultant(const MPoly& f, const MPoly& g, const std::string& var,
                ResultantMethod method = ResultantMethod::Auto);

// Fraction-free (Bareiss) determinant over Q(t)[vars].
MPoly bareiss_determinant(std::vector<std::vector<MPoly>> m);

}  // namespace hypertrop
