#pragma once

// Line-oriented model file format.
//
//   surface p1xp1 | p2 | hirzebruch <n> | abstract rank=<r>
//   gram            (abstract only: r following lines of r integers)
//   canonical <r integers>          (abstract only)
//   base_genus <g>                  (optional, abstract only)
//   curve <name> class=<c1,c2,...> pa=<int> boundary=<yes|no>
//   blowup <ex_name> at <curve>[,<curve2>] [boundary=<yes|no>]
//   blowup <ex_name> at free [boundary=<yes|no>]
//   flags affine=<yes|no>
//
// '#' starts a comment. Curve lines may follow blowup lines, in which case
// the class is read in the current (blown-up) basis; this is how proper
// transforms of curves through an already-blown center are declared, since a
// blow-up line can subtract the exceptional class from at most two hosts.
// Canonical serialization replays the construction when a provenance exists
// and falls back to the abstract form otherwise.

#include <sstream>
#include <string>
#include <vector>

#include "logsurf/model.hpp"

namespace logsurf {

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) { out.push_back(cur); cur.clear(); }
        else cur += ch;
    }
    out.push_back(cur);
    return out;
}

inline std::vector<std::string> tokens(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

inline Integer parse_int(const std::string& s, int line, const char* what) {
    try {
        return Integer(s);
    } catch (const std::exception&) {
        throw ParseError(line, 1, std::string("bad ") + what + " '" + s + "'");
    }
}

} // namespace detail

inline SurfaceModel make_base(BaseKind kind, int hirzebruch_n = 0, std::size_t abstract_rank = 0) {
    SurfaceModel m;
    Provenance prov;
    prov.base = kind;
    prov.hirzebruch_n = hirzebruch_n;
    switch (kind) {
    case BaseKind::P2:
        m.lattice.basis_names = {"h"};
        m.lattice.gram = {{Integer(1)}};
        m.lattice.canonical = {Integer(-3)};
        break;
    case BaseKind::P1xP1:
        m.lattice.basis_names = {"f", "s"};
        m.lattice.gram = {{Integer(0), Integer(1)}, {Integer(1), Integer(0)}};
        m.lattice.canonical = {Integer(-2), Integer(-2)};
        break;
    case BaseKind::Hirzebruch:
        m.lattice.basis_names = {"f", "s"};
        m.lattice.gram = {{Integer(0), Integer(1)}, {Integer(1), Integer(-hirzebruch_n)}};
        m.lattice.canonical = {Integer(-hirzebruch_n - 2), Integer(-2)};
        break;
    case BaseKind::Abstract:
        m.lattice.basis_names.resize(abstract_rank);
        for (std::size_t i = 0; i < abstract_rank; ++i)
            m.lattice.basis_names[i] = "b" + std::to_string(i + 1);
        m.lattice.gram.assign(abstract_rank, ZVector(abstract_rank, Integer(0)));
        m.lattice.canonical.assign(abstract_rank, Integer(0));
        break;
    }
    m.provenance = prov;
    return m;
}

inline SurfaceModel load_model(const std::string& text) {
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    SurfaceModel m;
    bool have_surface = false;
    bool abstract_needs_gram = false, abstract_needs_canonical = false;
    std::size_t gram_rows_read = 0, abstract_rank = 0;

    auto strip = [](std::string s) {
        auto hash = s.find('#');
        if (hash != std::string::npos) s.erase(hash);
        return s;
    };

    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = strip(raw);
        auto tok = detail::tokens(line);
        if (tok.empty()) continue;

        if (!have_surface) {
            if (tok[0] != "surface") throw ParseError(lineno, 1, "expected 'surface' line first");
            if (tok.size() < 2) throw ParseError(lineno, 1, "surface kind missing");
            if (tok[1] == "p1xp1") m = make_base(BaseKind::P1xP1);
            else if (tok[1] == "p2") m = make_base(BaseKind::P2);
            else if (tok[1] == "hirzebruch") {
                if (tok.size() < 3) throw ParseError(lineno, 1, "hirzebruch needs <n>");
                m = make_base(BaseKind::Hirzebruch, static_cast<int>(detail::parse_int(tok[2], lineno, "n")));
            } else if (tok[1] == "abstract") {
                if (tok.size() < 3 || tok[2].rfind("rank=", 0) != 0)
                    throw ParseError(lineno, 1, "abstract needs rank=<r>");
                abstract_rank = static_cast<std::size_t>(detail::parse_int(tok[2].substr(5), lineno, "rank"));
                if (abstract_rank == 0) throw ParseError(lineno, 1, "rank must be positive");
                m = make_base(BaseKind::Abstract, 0, abstract_rank);
                abstract_needs_gram = abstract_needs_canonical = true;
            } else {
                throw ParseError(lineno, 1, "unknown surface kind '" + tok[1] + "'");
            }
            have_surface = true;
            continue;
        }

        if (abstract_needs_gram) {
            if (gram_rows_read == 0) {
                if (tok[0] != "gram") throw ParseError(lineno, 1, "expected 'gram' after abstract surface");
                ++gram_rows_read; // header consumed
                continue;
            }
            if (tok.size() != abstract_rank)
                throw ParseError(lineno, 1, "gram row needs " + std::to_string(abstract_rank) + " integers");
            for (std::size_t j = 0; j < abstract_rank; ++j)
                m.lattice.gram[gram_rows_read - 1][j] = detail::parse_int(tok[j], lineno, "gram entry");
            if (++gram_rows_read == abstract_rank + 1) abstract_needs_gram = false;
            continue;
        }
        if (abstract_needs_canonical) {
            if (tok[0] != "canonical") throw ParseError(lineno, 1, "expected 'canonical' after gram");
            if (tok.size() != abstract_rank + 1)
                throw ParseError(lineno, 1, "canonical needs " + std::to_string(abstract_rank) + " integers");
            for (std::size_t j = 0; j < abstract_rank; ++j)
                m.lattice.canonical[j] = detail::parse_int(tok[j + 1], lineno, "canonical entry");
            abstract_needs_canonical = false;
            continue;
        }

        if (tok[0] == "base_genus") {
            if (tok.size() != 2) throw ParseError(lineno, 1, "base_genus needs one integer");
            m.base_genus_hint = static_cast<int>(detail::parse_int(tok[1], lineno, "base_genus"));
            continue;
        }

        if (tok[0] == "curve") {
            if (tok.size() < 4) throw ParseError(lineno, 1, "curve needs <name> class=... pa=... boundary=...");
            Curve c;
            c.name = tok[1];
            if (c.name == "free") throw ParseError(lineno, 1, "'free' is a reserved name");
            bool have_class = false, have_pa = false, have_bd = false;
            for (std::size_t i = 2; i < tok.size(); ++i) {
                const std::string& t = tok[i];
                if (t.rfind("class=", 0) == 0) {
                    auto parts = detail::split(t.substr(6), ',');
                    if (parts.size() != m.lattice.rank())
                        throw ParseError(lineno, 1, "class of '" + c.name + "' needs " +
                                                        std::to_string(m.lattice.rank()) + " entries");
                    QVector v(parts.size());
                    for (std::size_t j = 0; j < parts.size(); ++j)
                        v[j] = Rational(detail::parse_int(parts[j], lineno, "class entry"));
                    c.cls = DivisorClass(std::move(v));
                    have_class = true;
                } else if (t.rfind("pa=", 0) == 0) {
                    c.pa = Rational(detail::parse_int(t.substr(3), lineno, "pa"));
                    have_pa = true;
                } else if (t.rfind("boundary=", 0) == 0) {
                    std::string b = t.substr(9);
                    if (b != "yes" && b != "no") throw ParseError(lineno, 1, "boundary must be yes|no");
                    c.in_boundary = (b == "yes");
                    have_bd = true;
                } else {
                    throw ParseError(lineno, 1, "unknown curve attribute '" + t + "'");
                }
            }
            if (!have_class || !have_pa || !have_bd)
                throw ParseError(lineno, 1, "curve line needs class=, pa= and boundary=");
            if (m.find_curve(c.name))
                throw ParseError(lineno, 1, "duplicate curve name '" + c.name + "'");
            bool after_blowups = m.provenance && !m.provenance->blowups.empty();
            if (m.provenance) {
                BaseCurveRecord rec;
                rec.name = c.name;
                for (const auto& q : c.cls.coeffs) rec.cls.push_back(numerator(q));
                rec.pa = c.pa;
                rec.in_boundary = c.in_boundary;
                rec.declared_after_blowups = after_blowups;
                m.provenance->base_curves.push_back(std::move(rec));
            }
            m.curves.push_back(std::move(c));
            continue;
        }

        if (tok[0] == "blowup") {
            if (tok.size() < 4 || tok[2] != "at")
                throw ParseError(lineno, 1, "blowup syntax: blowup <name> at <curve>[,<curve2>] [boundary=yes|no]");
            std::string ex_name = tok[1];
            BlowUpTarget target;
            if (tok[3] == "free") target = BlowUpTarget::free_point();
            else {
                auto hosts = detail::split(tok[3], ',');
                if (hosts.size() == 1) target = BlowUpTarget::on(hosts[0]);
                else if (hosts.size() == 2) target = BlowUpTarget::at(hosts[0], hosts[1]);
                else throw ParseError(lineno, 1, "blowup target names more than two curves");
            }
            bool boundary = true;
            if (tok.size() >= 5) {
                if (tok[4].rfind("boundary=", 0) != 0)
                    throw ParseError(lineno, 1, "unknown blowup attribute '" + tok[4] + "'");
                std::string b = tok[4].substr(9);
                if (b != "yes" && b != "no") throw ParseError(lineno, 1, "boundary must be yes|no");
                boundary = (b == "yes");
            }
            try {
                m = blow_up(m, ex_name, target, boundary);
            } catch (const Error& e) {
                throw ParseError(lineno, 1, e.what());
            }
            continue;
        }

        if (tok[0] == "flags") {
            for (std::size_t i = 1; i < tok.size(); ++i) {
                if (tok[i].rfind("affine=", 0) == 0) {
                    std::string b = tok[i].substr(7);
                    if (b != "yes" && b != "no") throw ParseError(lineno, 1, "affine must be yes|no");
                    m.affine_claimed = (b == "yes");
                } else {
                    throw ParseError(lineno, 1, "unknown flag '" + tok[i] + "'");
                }
            }
            continue;
        }

        throw ParseError(lineno, 1, "unknown directive '" + tok[0] + "'");
    }

    if (!have_surface) throw ParseError(1, 1, "empty model: no 'surface' line");
    if (abstract_needs_gram || abstract_needs_canonical)
        throw ParseError(lineno, 1, "abstract surface missing gram/canonical");
    return m;
}

inline std::string save_model(const SurfaceModel& m) {
    std::ostringstream os;
    if (m.provenance) {
        const Provenance& p = *m.provenance;
        switch (p.base) {
        case BaseKind::P1xP1: os << "surface p1xp1\n"; break;
        case BaseKind::P2: os << "surface p2\n"; break;
        case BaseKind::Hirzebruch: os << "surface hirzebruch " << p.hirzebruch_n << "\n"; break;
        case BaseKind::Abstract: {
            os << "surface abstract rank=" << m.lattice.rank() - p.blowups.size() << "\n";
            break;
        }
        }
        std::size_t base_rank = m.lattice.rank() - p.blowups.size();
        if (p.base == BaseKind::Abstract) {
            os << "gram\n";
            for (std::size_t i = 0; i < base_rank; ++i) {
                for (std::size_t j = 0; j < base_rank; ++j)
                    os << (j ? " " : "") << m.lattice.gram[i][j];
                os << "\n";
            }
            os << "canonical";
            for (std::size_t j = 0; j < base_rank; ++j) os << " " << m.lattice.canonical[j];
            os << "\n";
        }
        if (m.base_genus_hint) os << "base_genus " << *m.base_genus_hint << "\n";
        // Replay in declaration order. A curve record's class length fixes the
        // number of blow-ups that must precede it.
        auto emit_blowup = [&os](const BlowUpRecord& b) {
            os << "blowup " << b.exceptional_name << " at ";
            if (b.hosts.empty()) os << "free";
            else {
                os << b.hosts[0];
                if (b.hosts.size() == 2) os << "," << b.hosts[1];
            }
            if (!b.boundary) os << " boundary=no";
            os << "\n";
        };
        std::size_t emitted_blowups = 0;
        for (const auto& rec : p.base_curves) {
            while (base_rank + emitted_blowups < rec.cls.size() && emitted_blowups < p.blowups.size())
                emit_blowup(p.blowups[emitted_blowups++]);
            os << "curve " << rec.name << " class=";
            for (std::size_t j = 0; j < rec.cls.size(); ++j) os << (j ? "," : "") << rec.cls[j];
            os << " pa=" << to_string(rec.pa) << " boundary=" << (rec.in_boundary ? "yes" : "no") << "\n";
        }
        while (emitted_blowups < p.blowups.size())
            emit_blowup(p.blowups[emitted_blowups++]);
    } else {
        os << "surface abstract rank=" << m.lattice.rank() << "\n";
        os << "gram\n";
        for (std::size_t i = 0; i < m.lattice.rank(); ++i) {
            for (std::size_t j = 0; j < m.lattice.rank(); ++j)
                os << (j ? " " : "") << m.lattice.gram[i][j];
            os << "\n";
        }
        os << "canonical";
        for (const auto& k : m.lattice.canonical) os << " " << k;
        os << "\n";
        if (m.base_genus_hint) os << "base_genus " << *m.base_genus_hint << "\n";
        for (const auto& c : m.curves) {
            os << "curve " << c.name << " class=";
            for (std::size_t j = 0; j < c.cls.rank(); ++j)
                os << (j ? "," : "") << numerator(c.cls.coeffs[j]);
            os << " pa=" << to_string(c.pa) << " boundary=" << (c.in_boundary ? "yes" : "no") << "\n";
        }
    }
    os << "flags affine=" << (m.affine_claimed ? "yes" : "no") << "\n";
    return os.str();
}

} // namespace logsurf
