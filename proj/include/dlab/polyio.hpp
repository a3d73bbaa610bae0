#pragma once

#include <filesystem>
#include <string>

#include "dlab/dirichlet.hpp"

namespace dlab {

// JSON object {"frequencies": [...], "re": [...], "im": [...]}.
std::string polynomial_to_json(const DirichletPolynomial& D);
DirichletPolynomial polynomial_from_json(const std::string& text);

DirichletPolynomial read_polynomial(const std::filesystem::path& path);
void write_polynomial(const DirichletPolynomial& D, const std::filesystem::path& path);

}  // namespace dlab
