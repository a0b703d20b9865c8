#include "qec5/circuit.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qec5 {

int Instruction::group_size() const {
    if (op == Op::Gate) return gate_arity(gate.kind);
    if (op == Op::Depol2) return 2;
    return 1;
}

void Circuit::begin_moment() { moments.emplace_back(); }

void Circuit::trim() {
    while (!moments.empty() && moments.back().empty()) moments.pop_back();
}

void Circuit::append(Instruction instr) {
    if (moments.empty()) moments.emplace_back();
    const int gs = instr.group_size();
    if (instr.targets.empty() || static_cast<int>(instr.targets.size()) % gs != 0)
        throw std::invalid_argument("instruction target count not a multiple of its arity");
    std::set<int> used;
    for (const auto& other : moments.back())
        for (int t : other.targets) used.insert(t);
    for (std::size_t g = 0; g + gs <= instr.targets.size(); g += gs) {
        if (gs == 2 && instr.targets[g] == instr.targets[g + 1])
            throw std::invalid_argument("duplicate target within a two-qudit group");
    }
    for (int t : instr.targets) {
        if (t < 0 || t >= n_qudits)
            throw std::out_of_range("target " + std::to_string(t) + " out of range");
        if (!used.insert(t).second)
            throw std::invalid_argument("duplicate target " + std::to_string(t) + " in moment");
    }
    if (instr.op == Instruction::Op::Fault &&
        (instr.fx.size() != instr.targets.size() || instr.fz.size() != instr.targets.size()))
        throw std::invalid_argument("fault powers must match target count");
    if ((instr.op == Instruction::Op::Depol1 || instr.op == Instruction::Op::Depol2 ||
         instr.op == Instruction::Op::MFlip) &&
        (instr.param < 0.0 || instr.param > 1.0))
        throw std::invalid_argument("noise probability outside [0,1]");
    moments.back().push_back(std::move(instr));
}

std::size_t Circuit::instruction_count() const {
    std::size_t n = 0;
    for (const auto& m : moments) n += m.size();
    return n;
}

void Circuit::validate() const {
    for (const auto& m : moments) {
        std::set<int> used;
        for (const auto& instr : m)
            for (int t : instr.targets) {
                if (t < 0 || t >= n_qudits) throw std::out_of_range("target out of range");
                if (!used.insert(t).second) throw std::invalid_argument("duplicate target in moment");
            }
    }
}

Circuit operator+(const Circuit& a, const Circuit& b) {
    if (a.q != b.q || a.n_qudits != b.n_qudits)
        throw std::invalid_argument("circuit concatenation: shape mismatch");
    Circuit out = a;
    out.trim();
    for (const auto& m : b.moments) out.moments.push_back(m);
    return out;
}

namespace {

std::string instr_to_text(const Instruction& instr) {
    std::ostringstream out;
    switch (instr.op) {
        case Instruction::Op::Gate: out << gate_mnemonic(instr.gate); break;
        case Instruction::Op::Measure: out << "MEASURE"; break;
        case Instruction::Op::Reset: out << "RESET"; break;
        case Instruction::Op::Idle: out << "IDLE"; break;
        case Instruction::Op::Depol1: out << "DEPOL1(" << instr.param << ")"; break;
        case Instruction::Op::Depol2: out << "DEPOL2(" << instr.param << ")"; break;
        case Instruction::Op::MFlip: out << "MFLIP(" << instr.param << ")"; break;
        case Instruction::Op::Fault: out << "FAULT"; break;
    }
    for (int t : instr.targets) out << " " << t;
    if (instr.op == Instruction::Op::Fault) {
        for (std::size_t i = 0; i < instr.targets.size(); ++i) {
            out << " ";
            if (instr.fx[i] == 0 && instr.fz[i] == 0) out << "I";
            else {
                bool dot = false;
                if (instr.fx[i] != 0) { out << "X" << instr.fx[i]; dot = true; }
                if (instr.fz[i] != 0) { out << (dot ? "." : "") << "Z" << instr.fz[i]; }
            }
        }
    }
    return out.str();
}

}  // namespace

std::string emit_circuit(const Circuit& c) {
    std::ostringstream out;
    out << "DIM " << c.q << "\n";
    out << "QUDITS " << c.n_qudits << "\n";
    bool first = true;
    for (const auto& m : c.moments) {
        if (!first) out << "TICK\n";
        first = false;
        Moment sorted = m;
        std::stable_sort(sorted.begin(), sorted.end(),
                         [](const Instruction& a, const Instruction& b) {
                             return a.targets.front() < b.targets.front();
                         });
        for (const auto& instr : sorted) out << instr_to_text(instr) << "\n";
    }
    return out.str();
}

Circuit parse_circuit(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_dim = false, have_qudits = false;
    int q = 0, n = 0;
    Circuit c;
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument("parse error at line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "DIM") {
            if (have_dim) fail("duplicate DIM");
            if (!(ls >> q)) fail("DIM needs an integer");
            if (!is_prime(q)) fail("dimension must be prime");
            have_dim = true;
            continue;
        }
        if (head == "QUDITS") {
            if (!have_dim) fail("QUDITS before DIM");
            if (have_qudits) fail("duplicate QUDITS");
            if (!(ls >> n) || n <= 0) fail("QUDITS needs a positive integer");
            have_qudits = true;
            c = Circuit(Dim(q), n);
            continue;
        }
        if (!have_qudits) fail("instruction before DIM/QUDITS header");
        if (head == "TICK") {
            c.begin_moment();
            continue;
        }
        Instruction instr;
        if (head == "MEASURE") instr.op = Instruction::Op::Measure;
        else if (head == "RESET") instr.op = Instruction::Op::Reset;
        else if (head == "IDLE") instr.op = Instruction::Op::Idle;
        else if (head == "FAULT") instr.op = Instruction::Op::Fault;
        else if (head.rfind("DEPOL1(", 0) == 0 || head.rfind("DEPOL2(", 0) == 0 ||
                 head.rfind("MFLIP(", 0) == 0) {
            auto open = head.find('('), close = head.find(')');
            if (close == std::string::npos || close < open) fail("malformed noise parameter");
            instr.op = head[0] == 'M' ? Instruction::Op::MFlip
                       : head[5] == '1' ? Instruction::Op::Depol1
                                        : Instruction::Op::Depol2;
            try {
                instr.param = std::stod(head.substr(open + 1, close - open - 1));
            } catch (const std::exception&) {
                fail("malformed noise probability");
            }
        } else {
            instr.op = Instruction::Op::Gate;
            if (!parse_gate_mnemonic(head, instr.gate)) fail("unknown mnemonic '" + head + "'");
        }
        std::string tok;
        std::vector<std::string> site_tokens;
        while (ls >> tok) {
            if (!tok.empty() && (std::isdigit(tok[0]) || tok[0] == '-') &&
                site_tokens.empty()) {
                try {
                    instr.targets.push_back(std::stoi(tok));
                } catch (const std::exception&) {
                    fail("bad target '" + tok + "'");
                }
            } else {
                if (instr.op != Instruction::Op::Fault) fail("unexpected token '" + tok + "'");
                site_tokens.push_back(tok);
            }
        }
        if (instr.targets.empty()) fail("instruction without targets");
        if (instr.op == Instruction::Op::Fault) {
            if (site_tokens.size() != instr.targets.size())
                fail("FAULT needs one Pauli token per target");
            for (const auto& st : site_tokens) {
                PauliString p = PauliString::parse(st, Dim(q));
                instr.fx.push_back(p.xs[0]);
                instr.fz.push_back(p.zs[0]);
            }
        }
        try {
            c.append(std::move(instr));
        } catch (const std::exception& e) {
            fail(e.what());
        }
    }
    if (!have_qudits) throw std::invalid_argument("parse error: missing DIM/QUDITS header");
    c.trim();
    return c;
}

std::string circuit_dot(const Circuit& c) {
    std::ostringstream out;
    out << "digraph moments {\n  rankdir=LR;\n";
    std::vector<std::string> last_node(c.n_qudits);
    int id = 0;
    for (std::size_t mi = 0; mi < c.moments.size(); ++mi) {
        for (const auto& instr : c.moments[mi]) {
            std::string name = "i" + std::to_string(id++);
            out << "  " << name << " [label=\"" << instr_to_text(instr) << " @" << mi << "\"];\n";
            for (int t : instr.targets) {
                if (!last_node[t].empty())
                    out << "  " << last_node[t] << " -> " << name << " [label=\"q" << t << "\"];\n";
                last_node[t] = name;
            }
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace qec5
