package com.example.planted;

import android.nfc.tech.Ndef;

public class TagWriter {
    void store(Ndef tag, NdefMessage message) {
        tag.writeNdefMessage(message);
    }
}
