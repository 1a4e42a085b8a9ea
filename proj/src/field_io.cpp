#include "vrvw/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include <json.hpp>

namespace vrvw {

namespace {

constexpr char kMagic[4] = {'V', 'R', 'V', 'W'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "field-file I/O assumes a little-endian host");

void write_u32(std::ostream& os, std::uint32_t v)
{
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t read_u32(std::istream& is)
{
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!is)
    throw std::runtime_error("field file truncated while reading a header word");
  return v;
}

int components_of(const std::string& kind)
{
  if (kind == "scalar")
    return 3;
  if (kind == "oneform" || kind == "connection")
    return 12;
  if (kind == "plusform")
    return 9;
  throw std::runtime_error("unknown field kind '" + kind + "'");
}

}  // namespace

const FieldFileEntry& FieldFile::find(const std::string& name) const
{
  for (const auto& e : entries)
    if (e.name == name)
      return e;
  throw std::runtime_error("field '" + name + "' not present in file");
}

void save_fields(const std::string& path, const FieldFile& file)
{
  require_valid(file.grid);

  nlohmann::json header;
  header["grid"] = {{"n", file.grid.n}, {"h", file.grid.h}};
  header["fields"] = nlohmann::json::array();
  std::int64_t offset = 0;
  for (const auto& e : file.entries) {
    const std::int64_t expect = std::int64_t(components_of(e.kind)) * file.grid.sites();
    if (e.values.size() != expect)
      throw std::invalid_argument("field '" + e.name + "' has " + std::to_string(e.values.size()) +
                                  " values, expected " + std::to_string(expect));
    header["fields"].push_back(
        {{"name", e.name}, {"kind", e.kind}, {"offset", offset}, {"count", e.values.size()}});
    offset += e.values.size();
  }
  const std::string header_str = header.dump();

  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw std::runtime_error("cannot open '" + path + "' for writing");
  os.write(kMagic, 4);
  write_u32(os, kVersion);
  write_u32(os, static_cast<std::uint32_t>(header_str.size()));
  os.write(header_str.data(), std::streamsize(header_str.size()));
  for (const auto& e : file.entries)
    os.write(reinterpret_cast<const char*>(e.values.data()),
             std::streamsize(e.values.size() * sizeof(double)));
  if (!os)
    throw std::runtime_error("write to '" + path + "' failed");
}

FieldFile load_fields(const std::string& path)
{
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw std::runtime_error("cannot open '" + path + "' for reading");

  char magic[4] = {};
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("'" + path + "' is not a field file (bad magic, expected \"VRVW\")");
  const std::uint32_t version = read_u32(is);
  if (version != kVersion)
    throw std::runtime_error("unsupported field-file version: expected " +
                             std::to_string(kVersion) + ", found " + std::to_string(version));
  const std::uint32_t header_len = read_u32(is);
  std::string header_str(header_len, '\0');
  is.read(header_str.data(), header_len);
  if (!is)
    throw std::runtime_error("field file truncated inside the JSON header");

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(header_str);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed field-file header: ") + e.what());
  }

  FieldFile file;
  file.grid.n = header.at("grid").at("n").get<int>();
  file.grid.h = header.at("grid").at("h").get<double>();
  require_valid(file.grid);

  std::int64_t expected_offset = 0;
  for (const auto& f : header.at("fields")) {
    FieldFileEntry e;
    e.name = f.at("name").get<std::string>();
    e.kind = f.at("kind").get<std::string>();
    const std::int64_t offset = f.at("offset").get<std::int64_t>();
    const std::int64_t count = f.at("count").get<std::int64_t>();
    if (offset != expected_offset)
      throw std::runtime_error("field '" + e.name + "' has a non-contiguous payload offset");
    if (count != std::int64_t(components_of(e.kind)) * file.grid.sites())
      throw std::runtime_error("field '" + e.name + "' count disagrees with grid and kind");
    e.values.resize(count);
    is.read(reinterpret_cast<char*>(e.values.data()), std::streamsize(count * sizeof(double)));
    if (!is)
      throw std::runtime_error("field file truncated inside payload of '" + e.name + "'");
    expected_offset += count;
    file.entries.push_back(std::move(e));
  }
  return file;
}

}  // namespace vrvw
