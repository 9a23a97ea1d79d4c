package com.example.noise;

import static java.util.Objects.requireNonNull;

import java.io.FileInputStream;
import java.io.IOException;

class Interop {
    String describe(Object raw) throws IOException {
        requireNonNull(raw, "raw");
        String text = (String) raw;
        long asLong = (long) text.length();
        try (FileInputStream in = new FileInputStream(text); AutoCloseable extra = open()) {
            byte[][] chunks = new byte[4][16];
            outer:
            for (int i = 0; i < chunks.length; i++) {
                for (byte b : chunks[i]) {
                    if (b < 0) {
                        continue outer;
                    }
                }
                if (i == 2) {
                    break outer;
                }
            }
        } catch (IOException | RuntimeException e) {
            throw e;
        } finally {
            audit.log("done");
        }
        do {
            asLong--;
        } while (asLong > 0);
        assert text != null : "text";
        synchronized (this) {
            counter++;
        }
        return asLong == 0 ? text : text.trim();
    }

    AutoCloseable open() {
        return null;
    }

    int counter;
}
