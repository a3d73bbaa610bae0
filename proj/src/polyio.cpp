#include "dlab/polyio.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dlab/errors.hpp"

namespace dlab {

std::string polynomial_to_json(const DirichletPolynomial& D) {
    nlohmann::ordered_json j;
    std::vector<double> re, im;
    for (const auto& a : D.coefficients()) {
        re.push_back(a.real());
        im.push_back(a.imag());
    }
    j["frequencies"] = std::vector<u64>(D.frequencies().begin(), D.frequencies().end());
    j["re"] = re;
    j["im"] = im;
    return j.dump(2) + "\n";
}

DirichletPolynomial polynomial_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(std::string("polynomial file: ") + e.what());
    }
    if (!j.is_object()) throw DomainError("polynomial file: top level must be an object");
    for (const char* key : {"frequencies", "re", "im"})
        if (!j.contains(key) || !j[key].is_array())
            throw DomainError(std::string("polynomial file: missing array \"") + key + "\"");
    const auto& f = j["frequencies"];
    const auto& re = j["re"];
    const auto& im = j["im"];
    if (f.size() != re.size() || f.size() != im.size())
        throw DomainError("polynomial file: \"frequencies\", \"re\", \"im\" differ in length");

    std::vector<std::pair<u64, cplx>> terms;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!f[i].is_number_unsigned() || f[i].get<u64>() == 0)
            throw DomainError("polynomial file: frequencies[" + std::to_string(i) + "] is not a positive integer");
        if (!re[i].is_number() || !im[i].is_number())
            throw DomainError("polynomial file: coefficient " + std::to_string(i) + " is not numeric");
        terms.emplace_back(f[i].get<u64>(), cplx{re[i].get<double>(), im[i].get<double>()});
    }
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<u64> freqs;
    std::vector<cplx> coeffs;
    for (const auto& [n, a] : terms) {
        if (!freqs.empty() && freqs.back() == n)
            throw DomainError("polynomial file: duplicate frequency " + std::to_string(n));
        freqs.push_back(n);
        coeffs.push_back(a);
    }
    return {std::move(freqs), std::move(coeffs)};
}

DirichletPolynomial read_polynomial(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("polynomial file: cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return polynomial_from_json(ss.str());
    } catch (const DomainError& e) {
        throw DomainError(path.string() + ": " + e.what());
    }
}

void write_polynomial(const DirichletPolynomial& D, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DomainError("polynomial file: cannot write " + path.string());
    out << polynomial_to_json(D);
}

}  // namespace dlab
