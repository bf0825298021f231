#include "iqsp/serialize.hpp"

#include <cstring>
#include <fstream>

namespace iqsp {

namespace {

const char* basis_name(Basis b) { return b == Basis::Monomial ? "monomial" : "chebyshev"; }
Basis basis_from(const std::string& s) {
    if (s == "monomial") return Basis::Monomial;
    if (s == "chebyshev") return Basis::Chebyshev;
    throw domain_error("unknown basis tag: " + s);
}
const char* parity_name(Parity p) {
    switch (p) {
        case Parity::Even: return "even";
        case Parity::Odd: return "odd";
        default: return "none";
    }
}
Parity parity_from(const std::string& s) {
    if (s == "even") return Parity::Even;
    if (s == "odd") return Parity::Odd;
    if (s == "none") return Parity::None;
    throw domain_error("unknown parity tag: " + s);
}

}  // namespace

json to_json(const RealPolynomial& p) {
    json j;
    j["basis"] = basis_name(p.basis);
    j["parity"] = parity_name(p.parity);
    j["coefficients"] = std::vector<double>(p.coefficients.begin(), p.coefficients.end());
    return j;
}

RealPolynomial real_polynomial_from_json(const json& j) {
    RealPolynomial p;
    p.basis = basis_from(j.at("basis").get<std::string>());
    p.parity = parity_from(j.at("parity").get<std::string>());
    auto c = j.at("coefficients").get<std::vector<double>>();
    p.coefficients = Eigen::Map<const RealVector>(c.data(), static_cast<Eigen::Index>(c.size()));
    return p;
}

json to_json(const ComplexPolynomial& p) {
    json j;
    j["basis"] = basis_name(p.basis);
    std::vector<std::vector<double>> cs;
    for (Eigen::Index i = 0; i < p.coefficients.size(); ++i)
        cs.push_back({p.coefficients[i].real(), p.coefficients[i].imag()});
    j["coefficients"] = cs;
    return j;
}

ComplexPolynomial complex_polynomial_from_json(const json& j) {
    ComplexPolynomial p;
    p.basis = basis_from(j.at("basis").get<std::string>());
    auto cs = j.at("coefficients").get<std::vector<std::vector<double>>>();
    p.coefficients = ComplexVector(static_cast<Eigen::Index>(cs.size()));
    for (std::size_t i = 0; i < cs.size(); ++i)
        p.coefficients[static_cast<Eigen::Index>(i)] = cxd(cs[i].at(0), cs[i].at(1));
    return p;
}

json to_json(const QspSequence& s) {
    json j;
    j["convention"] = (s.convention == QspConvention::WZ_SX) ? "WZ_SX" : "WX_SZ";
    j["phases"] = std::vector<double>(s.phases.begin(), s.phases.end());
    return j;
}

QspSequence qsp_sequence_from_json(const json& j) {
    QspSequence s;
    auto conv = j.at("convention").get<std::string>();
    if (conv == "WZ_SX")
        s.convention = QspConvention::WZ_SX;
    else if (conv == "WX_SZ")
        s.convention = QspConvention::WX_SZ;
    else
        throw domain_error("unknown convention tag: " + conv);
    auto ph = j.at("phases").get<std::vector<double>>();
    s.phases = Eigen::Map<const RealVector>(ph.data(), static_cast<Eigen::Index>(ph.size()));
    return s;
}

json to_json(const GqspSequence& s) {
    json j;
    j["thetas"] = std::vector<double>(s.thetas.begin(), s.thetas.end());
    j["omegas"] = std::vector<double>(s.omegas.begin(), s.omegas.end());
    j["lambda"] = s.lambda;
    return j;
}

GqspSequence gqsp_sequence_from_json(const json& j) {
    GqspSequence s;
    auto th = j.at("thetas").get<std::vector<double>>();
    auto om = j.at("omegas").get<std::vector<double>>();
    s.thetas = Eigen::Map<const RealVector>(th.data(), static_cast<Eigen::Index>(th.size()));
    s.omegas = Eigen::Map<const RealVector>(om.data(), static_cast<Eigen::Index>(om.size()));
    s.lambda = j.at("lambda").get<double>();
    return s;
}

json descriptor_json(const BlockEncoding& be) {
    json j;
    j["alpha"] = be.alpha;
    j["ancillas"] = be.ancillas;
    j["eps"] = be.eps;
    j["dim"] = be.unitary.rows();
    j["success_probability"] = be.success_probability();
    return j;
}

json to_json(const Circuit& c) {
    json j;
    json regs = json::array();
    for (const auto& r : c.registers)
        regs.push_back({{"name", r.name}, {"width", r.width}, {"offset", r.offset}});
    j["registers"] = regs;
    json gates = json::array();
    std::function<json(const Gate&)> gate_json = [&](const Gate& g) -> json {
        json e;
        switch (g.kind) {
            case Gate::Kind::XorRegister:
                e["op"] = "xor";
                e["src"] = g.r0;
                e["dst"] = g.r1;
                break;
            case Gate::Kind::AddConst: {
                e["op"] = "add";
                e["dst"] = g.r1;
                e["k"] = g.k;
                const char* p = g.pred == Gate::Pred::SrcOdd    ? "odd"
                                : g.pred == Gate::Pred::SrcEven ? "even"
                                : g.pred == Gate::Pred::SrcEquals ? "equals"
                                                                  : "always";
                e["pred"] = p;
                if (g.pred != Gate::Pred::Always) e["pred_register"] = g.pred_register;
                if (g.pred == Gate::Pred::SrcEquals) e["pred_value"] = g.pred_value;
                break;
            }
            case Gate::Kind::CompareLess:
                e["op"] = "cmp_less";
                e["x"] = g.r0;
                e["y"] = g.r1;
                e["flag_qubit"] = g.target_qubit;
                break;
            case Gate::Kind::CSwapRegisters:
                e["op"] = "cswap";
                e["x"] = g.r0;
                e["y"] = g.r1;
                e["control_qubit"] = g.control_qubit;
                break;
            case Gate::Kind::ControlledRx:
                e["op"] = "ctrl_rx_ladder";
                e["src"] = g.r0;
                e["target_qubit"] = g.target_qubit;
                e["base_angle"] = g.base_angle;
                if (g.gate_flag_qubit >= 0) e["gate_flag_qubit"] = g.gate_flag_qubit;
                break;
            case Gate::Kind::SingleQubit: {
                e["op"] = "single_qubit";
                e["target_qubit"] = g.target_qubit;
                std::vector<std::vector<double>> u;
                for (int r = 0; r < 2; ++r)
                    for (int cc = 0; cc < 2; ++cc)
                        u.push_back({g.u2(r, cc).real(), g.u2(r, cc).imag()});
                e["u"] = u;
                if (g.gate_flag_qubit >= 0) e["gate_flag_qubit"] = g.gate_flag_qubit;
                break;
            }
            case Gate::Kind::SubCircuit: {
                e["op"] = "sub_circuit";
                if (g.control_qubit >= 0) {
                    e["control_qubit"] = g.control_qubit;
                    e["control_value"] = g.control_value;
                }
                json sub = json::array();
                for (const auto& sg : g.sub->gates) sub.push_back(gate_json(sg));
                e["gates"] = sub;
                break;
            }
        }
        return e;
    };
    for (const auto& g : c.gates) gates.push_back(gate_json(g));
    j["gates"] = gates;
    return j;
}

void write_matrix(const std::string& path, const ComplexMatrix& m) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_matrix: cannot open " + path);
    char magic[8] = {'I', 'Q', 'S', 'P', 'M', 'A', 'T', '1'};
    f.write(magic, 8);
    std::uint32_t rows = static_cast<std::uint32_t>(m.rows());
    std::uint32_t cols = static_cast<std::uint32_t>(m.cols());
    f.write(reinterpret_cast<const char*>(&rows), 4);
    f.write(reinterpret_cast<const char*>(&cols), 4);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            double re = m(r, c).real(), im = m(r, c).imag();
            f.write(reinterpret_cast<const char*>(&re), 8);
            f.write(reinterpret_cast<const char*>(&im), 8);
        }
}

ComplexMatrix read_matrix(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("read_matrix: cannot open " + path);
    char magic[8];
    f.read(magic, 8);
    if (std::memcmp(magic, "IQSPMAT1", 8) != 0)
        throw std::runtime_error("read_matrix: bad magic");
    std::uint32_t rows = 0, cols = 0;
    f.read(reinterpret_cast<char*>(&rows), 4);
    f.read(reinterpret_cast<char*>(&cols), 4);
    ComplexMatrix m(rows, cols);
    for (std::uint32_t r = 0; r < rows; ++r)
        for (std::uint32_t c = 0; c < cols; ++c) {
            double re, im;
            f.read(reinterpret_cast<char*>(&re), 8);
            f.read(reinterpret_cast<char*>(&im), 8);
            m(r, c) = cxd(re, im);
        }
    if (!f) throw std::runtime_error("read_matrix: truncated file");
    return m;
}

}  // namespace iqsp
