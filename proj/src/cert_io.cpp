#include "relsrs/cert_io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace relsrs {

  using json = nlohmann::ordered_json;

  namespace {

    // ---- writing ----------------------------------------------------------

    json int_json(BigInt const& v) {
      if (v >= std::numeric_limits<std::int64_t>::min()
          && v <= std::numeric_limits<std::int64_t>::max()) {
        return static_cast<std::int64_t>(v);
      }
      return v.str();
    }

    json rational_json(Rational const& r) {
      if (denominator(r) == 1) {
        return int_json(numerator(r));
      }
      return r.str();
    }

    json arctic_json(Arctic const& a) {
      return a.is_neg_inf() ? json("-inf") : int_json(a.value());
    }

    json word_json(Word const& w, Alphabet const& alphabet) {
      json out = json::array();
      for (auto l : w) {
        out.push_back(alphabet.name(l));
      }
      return out;
    }

    template <typename T, typename F>
    json matrix_json(Matrix<T> const& m, F entry) {
      json rows = json::array();
      for (std::size_t i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) {
          row.push_back(entry(m(i, j)));
        }
        rows.push_back(std::move(row));
      }
      return rows;
    }

    json order_json(OrderCertificate const& c, Alphabet const& alphabet);

    json loop_json(LoopCertificate const& c, Alphabet const& alphabet) {
      json j;
      j["type"]  = c.kind == LoopKind::mixed ? "loop-mixed" : "loop-emitting";
      j["start"] = word_json(c.start, alphabet);
      j["steps"] = json::array();
      for (auto const& s : c.steps) {
        j["steps"].push_back({{"rule", s.rule}, {"position", s.position}});
      }
      j["u"] = word_json(c.left, alphabet);
      j["w"] = word_json(c.right, alphabet);
      if (c.witness) {
        j["witness"] = {{"in", c.witness->context == Context::left ? "u" : "w"},
                        {"rule", c.witness->rule},
                        {"position", c.witness->position}};
      }
      return j;
    }

    json cert_json(Certificate const& cert, Alphabet const& alphabet) {
      return std::visit(
          [&](auto const& c) -> json {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, LoopCertificate>) {
              return loop_json(c, alphabet);
            } else if constexpr (std::is_same_v<T, EmptyRCertificate>) {
              return {{"type", "empty-R"}};
            } else if constexpr (std::is_same_v<T, StrictifyCertificate>) {
              json j;
              j["type"]    = "strictify-compose";
              j["verdict"] = to_string(c.verdict);
              if (c.strictified) {
                j["strictified"] = order_json(*c.strictified, alphabet);
              }
              if (c.s_termination) {
                j["s_termination"] = order_json(*c.s_termination, alphabet);
              }
              if (c.loop) {
                j["loop"] = loop_json(*c.loop, alphabet);
              }
              return j;
            } else {
              return order_json(OrderCertificate(c), alphabet);
            }
          },
          cert);
    }

    json order_json(OrderCertificate const& cert, Alphabet const& alphabet) {
      return std::visit(
          [&](auto const& c) -> json {
            using T = std::decay_t<decltype(c)>;
            json j;
            if constexpr (std::is_same_v<T, WeightCertificate>) {
              j["type"]    = "weights";
              j["weights"] = json::object();
              for (auto const& [l, w] : c.weights) {
                j["weights"][alphabet.name(l)] = rational_json(w);
              }
            } else {
              constexpr bool natural = std::is_same_v<T, NaturalMatrixCertificate>;
              j["type"]              = natural ? "matrix-natural" : "matrix-arctic";
              j["dimension"]         = c.dimension;
              j["matrices"]          = json::object();
              for (auto const& [l, m] : c.matrices) {
                if constexpr (natural) {
                  j["matrices"][alphabet.name(l)] = matrix_json(m, int_json);
                } else {
                  j["matrices"][alphabet.name(l)] = matrix_json(m, arctic_json);
                }
              }
            }
            return j;
          },
          cert);
    }

    // Objects one key per line, arrays of scalars on one line.
    void pretty(json const& j, std::ostream& out, int indent) {
      auto pad = [&](int n) { out << std::string(static_cast<std::size_t>(n), ' '); };
      if (j.is_object()) {
        if (j.empty()) {
          out << "{}";
          return;
        }
        bool flat = std::none_of(j.begin(), j.end(),
                                 [](json const& x) { return x.is_structured(); });
        if (flat) {
          out << "{";
          std::size_t i = 0;
          for (auto it = j.begin(); it != j.end(); ++it, ++i) {
            out << (i ? ", " : "") << json(it.key()).dump() << ": " << it.value().dump();
          }
          out << "}";
          return;
        }
        out << "{\n";
        std::size_t i = 0;
        for (auto it = j.begin(); it != j.end(); ++it, ++i) {
          pad(indent + 2);
          out << json(it.key()).dump() << ": ";
          pretty(it.value(), out, indent + 2);
          out << (i + 1 < j.size() ? ",\n" : "\n");
        }
        pad(indent);
        out << "}";
      } else if (j.is_array()) {
        bool flat = true;
        for (auto const& x : j) {
          flat = flat && !x.is_structured();
        }
        if (flat) {
          out << "[";
          for (std::size_t i = 0; i < j.size(); ++i) {
            out << (i ? ", " : "") << j[i].dump();
          }
          out << "]";
          return;
        }
        out << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
          pad(indent + 2);
          pretty(j[i], out, indent + 2);
          out << (i + 1 < j.size() ? ",\n" : "\n");
        }
        pad(indent);
        out << "]";
      } else {
        out << j.dump();
      }
    }

    // ---- reading ----------------------------------------------------------

    [[noreturn]] void schema(std::string const& what) {
      throw SchemaError("certificate schema: " + what);
    }

    json const& field(json const& j, char const* key) {
      if (!j.is_object() || !j.contains(key)) {
        schema(std::string("missing field \"") + key + "\"");
      }
      return j.at(key);
    }

    BigInt read_int(json const& j) {
      if (j.is_number_integer()) {
        return j.is_number_unsigned() ? BigInt(j.get<std::uint64_t>())
                                      : BigInt(j.get<std::int64_t>());
      }
      if (j.is_string()) {
        try {
          return BigInt(j.get<std::string>());
        } catch (std::exception const&) {
        }
      }
      schema("expected an integer, got " + j.dump());
    }

    Rational read_rational(json const& j) {
      if (j.is_string()) {
        auto s = j.get<std::string>();
        auto slash = s.find('/');
        if (slash != std::string::npos) {
          auto num = read_int(json(s.substr(0, slash)));
          auto den = read_int(json(s.substr(slash + 1)));
          if (den == 0) {
            schema("zero denominator in " + s);
          }
          return Rational(num, den);
        }
      }
      return Rational(read_int(j));
    }

    Arctic read_arctic(json const& j) {
      if (j.is_string() && j.get<std::string>() == "-inf") {
        return Arctic::neg_inf();
      }
      return Arctic(read_int(j));
    }

    std::size_t read_index(json const& j) {
      if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
        schema("expected a non-negative index, got " + j.dump());
      }
      return j.get<std::size_t>();
    }

    Letter read_letter(std::string const& name, Alphabet const& alphabet) {
      if (!alphabet.contains(name)) {
        throw CertificateError("unknown letter " + name);
      }
      return alphabet.index(name);
    }

    Word read_word(json const& j, Alphabet const& alphabet) {
      if (!j.is_array()) {
        schema("a word must be a list of letters");
      }
      Word w;
      for (auto const& x : j) {
        if (!x.is_string()) {
          schema("a letter must be a string");
        }
        w.push_back(read_letter(x.get<std::string>(), alphabet));
      }
      return w;
    }

    template <typename T, typename F>
    Matrix<T> read_matrix(json const& j, std::size_t dim, F entry) {
      if (!j.is_array() || j.size() != dim) {
        throw CertificateError("dimension mismatch: expected " + std::to_string(dim) + " rows");
      }
      Matrix<T> m(dim, T{});
      for (std::size_t i = 0; i < dim; ++i) {
        if (!j[i].is_array() || j[i].size() != dim) {
          throw CertificateError("dimension mismatch: row " + std::to_string(i + 1)
                                 + " does not have " + std::to_string(dim) + " entries");
        }
        for (std::size_t k = 0; k < dim; ++k) {
          m(i, k) = entry(j[i][k]);
        }
      }
      return m;
    }

    OrderCertificate read_order(json const& j, Alphabet const& alphabet);

    LoopCertificate read_loop(json const& j, Alphabet const& alphabet) {
      LoopCertificate c;
      auto const      type = field(j, "type").get<std::string>();
      if (type != "loop-mixed" && type != "loop-emitting") {
        schema("expected a loop certificate, got type " + type);
      }
      c.kind  = type == "loop-mixed" ? LoopKind::mixed : LoopKind::emitting;
      c.start = read_word(field(j, "start"), alphabet);
      auto const& steps = field(j, "steps");
      if (!steps.is_array()) {
        schema("\"steps\" must be a list");
      }
      for (auto const& s : steps) {
        c.steps.push_back(Step{read_index(field(s, "position")), read_index(field(s, "rule"))});
      }
      c.left  = read_word(field(j, "u"), alphabet);
      c.right = read_word(field(j, "w"), alphabet);
      if (c.kind == LoopKind::emitting) {
        auto const& w  = field(j, "witness");
        auto const  in = field(w, "in");
        if (in != "u" && in != "w") {
          schema("witness \"in\" must be \"u\" or \"w\"");
        }
        c.witness = RedexWitness{in == "u" ? Context::left : Context::right,
                                 read_index(field(w, "rule")),
                                 read_index(field(w, "position"))};
      }
      return c;
    }

    NaturalMatrixCertificate read_natural(json const& j, Alphabet const& alphabet) {
      NaturalMatrixCertificate c;
      c.dimension    = read_index(field(j, "dimension"));
      auto const& ms = field(j, "matrices");
      if (!ms.is_object()) {
        schema("\"matrices\" must map letters to matrices");
      }
      for (auto it = ms.begin(); it != ms.end(); ++it) {
        c.matrices[read_letter(it.key(), alphabet)]
            = read_matrix<BigInt>(it.value(), c.dimension, read_int);
      }
      return c;
    }

    ArcticMatrixCertificate read_arctic_cert(json const& j, Alphabet const& alphabet) {
      ArcticMatrixCertificate c;
      c.dimension    = read_index(field(j, "dimension"));
      auto const& ms = field(j, "matrices");
      if (!ms.is_object()) {
        schema("\"matrices\" must map letters to matrices");
      }
      for (auto it = ms.begin(); it != ms.end(); ++it) {
        c.matrices[read_letter(it.key(), alphabet)]
            = read_matrix<Arctic>(it.value(), c.dimension, read_arctic);
      }
      return c;
    }

    OrderCertificate read_order(json const& j, Alphabet const& alphabet) {
      auto const& t = field(j, "type");
      if (!t.is_string()) {
        schema("\"type\" must be a string");
      }
      auto const type = t.get<std::string>();
      if (type == "weights") {
        WeightCertificate c;
        auto const&       ws = field(j, "weights");
        if (!ws.is_object()) {
          schema("\"weights\" must map letters to numbers");
        }
        for (auto it = ws.begin(); it != ws.end(); ++it) {
          c.weights[read_letter(it.key(), alphabet)] = read_rational(it.value());
        }
        return c;
      }
      if (type == "matrix-natural") {
        return read_natural(j, alphabet);
      }
      if (type == "matrix-arctic") {
        return read_arctic_cert(j, alphabet);
      }
      schema("expected weights or a matrix certificate, got type " + type);
    }

    Certificate read_cert(json const& j, Alphabet const& alphabet) {
      auto const& t = field(j, "type");
      if (!t.is_string()) {
        schema("\"type\" must be a string");
      }
      auto const type = t.get<std::string>();
      if (type == "loop-mixed" || type == "loop-emitting") {
        return read_loop(j, alphabet);
      }
      if (type == "empty-R") {
        return EmptyRCertificate{};
      }
      if (type == "strictify-compose") {
        StrictifyCertificate c;
        auto const           v = field(j, "verdict");
        if (v == "YES") {
          c.verdict     = Verdict::yes;
          c.strictified = read_order(field(j, "strictified"), alphabet);
        } else if (v == "NO") {
          c.verdict       = Verdict::no;
          c.s_termination = read_order(field(j, "s_termination"), alphabet);
          c.loop          = read_loop(field(j, "loop"), alphabet);
        } else {
          schema("strictify-compose verdict must be YES or NO");
        }
        return c;
      }
      if (type == "weights" || type == "matrix-natural" || type == "matrix-arctic") {
        return std::visit([](auto&& x) { return Certificate(std::move(x)); },
                          read_order(j, alphabet));
      }
      schema("unknown certificate type " + type);
    }

  }  // namespace

  std::string write_certificate(Certificate const& cert, Alphabet const& alphabet) {
    std::ostringstream out;
    pretty(cert_json(cert, alphabet), out, 0);
    out << "\n";
    return out.str();
  }

  Certificate read_certificate(std::string_view text, Alphabet const& alphabet) {
    json j;
    try {
      j = json::parse(text);
    } catch (json::parse_error const& e) {
      throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    try {
      return read_cert(j, alphabet);
    } catch (json::exception const& e) {
      throw SchemaError(std::string("certificate schema: ") + e.what());
    }
  }

  Certificate read_certificate_file(std::string const& path, Alphabet const& alphabet) {
    std::ifstream in(path);
    if (!in) {
      throw std::runtime_error("cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return read_certificate(buf.str(), alphabet);
  }

}  // namespace relsrs
