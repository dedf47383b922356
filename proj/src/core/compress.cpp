// Copyright (c) 2026 The InterSnap Authors.
// SPDX-License-Identifier: Apache-2.0
#include "core/compress.hpp"

#include <zlib.h>

#include <stdexcept>

namespace intersnap {

Bytes deflate_bytes(std::span<const uint8_t> input) {
    z_stream zs{};
    if (deflateInit(&zs, 6) != Z_OK) throw std::runtime_error("deflateInit failed");
    Bytes out(deflateBound(&zs, static_cast<uLong>(input.size())));
    zs.next_in = const_cast<Bytef*>(input.data());
    zs.avail_in = static_cast<uInt>(input.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc = deflate(&zs, Z_FINISH);
    deflateEnd(&zs);
    if (rc != Z_STREAM_END) throw std::runtime_error("deflate failed");
    out.resize(zs.total_out);
    return out;
}

std::optional<Bytes> inflate_bytes(std::span<const uint8_t> input) {
    z_stream zs{};
    if (inflateInit(&zs) != Z_OK) return std::nullopt;
    Bytes out;
    out.resize(input.size() * 4 + 1024);
    zs.next_in = const_cast<Bytef*>(input.data());
    zs.avail_in = static_cast<uInt>(input.size());
    size_t written = 0;
    int rc = Z_OK;
    while (true) {
        zs.next_out = out.data() + written;
        zs.avail_out = static_cast<uInt>(out.size() - written);
        rc = inflate(&zs, Z_NO_FLUSH);
        written = zs.total_out;
        if (rc == Z_STREAM_END) break;
        if (rc == Z_OK || rc == Z_BUF_ERROR) {
            if (zs.avail_out == 0 || rc == Z_BUF_ERROR) {
                if (zs.avail_in == 0 && rc == Z_BUF_ERROR) {
                    inflateEnd(&zs);
                    return std::nullopt;  // truncated stream
                }
                out.resize(out.size() * 2);
                continue;
            }
        } else {
            inflateEnd(&zs);
            return std::nullopt;
        }
    }
    inflateEnd(&zs);
    out.resize(written);
    return out;
}

}  // namespace intersnap
