#include "intwine/dynamics/checkpoint.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include "intwine/errors.hpp"

namespace intwine::dynamics {

using spectral::detail::FieldAccess;

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
void put(std::vector<unsigned char>& buf, T v) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  buf.insert(buf.end(), b, b + sizeof(T));
}

class Reader {
 public:
  explicit Reader(std::vector<unsigned char> d) : d_(std::move(d)) {}
  template <class T>
  T get() {
    if (pos_ + sizeof(T) > d_.size()) throw IoError("checkpoint truncated");
    unsigned char b[sizeof(T)];
    std::memcpy(b, d_.data() + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
    pos_ += sizeof(T);
    T v;
    std::memcpy(&v, b, sizeof(T));
    return v;
  }
  bool done() const { return pos_ == d_.size(); }

 private:
  std::vector<unsigned char> d_;
  std::size_t pos_ = 0;
};

void put_field(std::vector<unsigned char>& buf, const SpectralField& f) {
  for (std::size_t k = 0; k < f.x().size(); ++k) {
    put(buf, f.x()[k].real());
    put(buf, f.x()[k].imag());
    put(buf, f.y()[k].real());
    put(buf, f.y()[k].imag());
  }
}

void get_field(Reader& r, SpectralField& f) {
  auto& x = FieldAccess::x(f);
  auto& y = FieldAccess::y(f);
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double xr = r.get<double>();
    const double xi = r.get<double>();
    const double yr = r.get<double>();
    const double yi = r.get<double>();
    x[k] = cplx(xr, xi);
    y[k] = cplx(yr, yi);
  }
}

Checkpoint load_impl(const std::string& path, const Grid* grid) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint '" + path + "'");
  std::vector<unsigned char> data((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  Reader r(std::move(data));
  char magic[4];
  for (char& c : magic) c = static_cast<char>(r.get<unsigned char>());
  if (std::memcmp(magic, "ITWN", 4) != 0) throw IoError("'" + path + "' is not a checkpoint");
  const auto version = r.get<std::uint32_t>();
  if (version != kCheckpointVersion) {
    throw IoError("unsupported checkpoint version " + std::to_string(version));
  }
  const double nu = r.get<double>();
  const double t = r.get<double>();
  const auto n = static_cast<int>(r.get<std::uint32_t>());
  const double K = r.get<double>();
  const auto cls = r.get<std::uint8_t>();
  if (cls > static_cast<std::uint8_t>(MatrixClass::General)) throw IoError("bad matrix class");
  std::array<double, 4> p{};
  p[0] = r.get<double>();
  p[1] = r.get<double>();
  const auto seed = r.get<std::uint64_t>();
  Coupling coupling = Coupling::ProjectK;
  if (static_cast<MatrixClass>(cls) == MatrixClass::General) {
    p[2] = r.get<double>();
    p[3] = r.get<double>();
    const auto c = r.get<std::uint8_t>();
    if (c > 1) throw IoError("bad coupling tag");
    coupling = static_cast<Coupling>(c);
  }
  if (grid != nullptr && grid->n() != n) {
    throw IoError("checkpoint grid n = " + std::to_string(n) + " does not match requested n = " +
                  std::to_string(grid->n()));
  }
  const Grid g = grid != nullptr ? *grid : Grid(n);
  Checkpoint c(g);
  c.nu = nu;
  c.t = t;
  c.K = K;
  c.seed = seed;
  try {
    c.matrix = IntertwiningMatrix::from_params(static_cast<MatrixClass>(cls), p, coupling);
  } catch (const PreconditionError& e) {
    throw IoError(std::string("checkpoint matrix: ") + e.what());
  }
  get_field(r, c.v1);
  get_field(r, c.v2);
  if (!r.done()) throw IoError("trailing bytes in checkpoint");
  return c;
}

}  // namespace

void checkpoint_save(const IntertwinedState& s, std::uint64_t seed, const std::string& path) {
  std::vector<unsigned char> buf;
  for (char c : {'I', 'T', 'W', 'N'}) buf.push_back(static_cast<unsigned char>(c));
  put<std::uint32_t>(buf, kCheckpointVersion);
  put(buf, s.nu);
  put(buf, s.t);
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(s.grid().n()));
  put(buf, s.K);
  put<std::uint8_t>(buf, static_cast<std::uint8_t>(s.matrix.cls()));
  put(buf, s.matrix.param1());
  put(buf, s.matrix.param2());
  put<std::uint64_t>(buf, seed);
  if (s.matrix.cls() == MatrixClass::General) {
    put(buf, s.matrix.m(2, 1));
    put(buf, s.matrix.m(2, 2));
    put<std::uint8_t>(buf, static_cast<std::uint8_t>(s.matrix.coupling()));
  }
  put_field(buf, s.v1);
  put_field(buf, s.v2);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp + "'");
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) throw IoError("write failed for '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw IoError("cannot rename onto '" + path + "'");
}

Checkpoint checkpoint_load(const std::string& path) { return load_impl(path, nullptr); }

Checkpoint checkpoint_load(const std::string& path, const Grid& grid) {
  return load_impl(path, &grid);
}

}  // namespace intwine::dynamics
