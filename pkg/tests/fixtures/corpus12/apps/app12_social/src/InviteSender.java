package com.example.social;

import android.telephony.SmsManager;

public class InviteSender {
    SmsManager manager;

    void invite(String number) {
        manager.sendTextMessage(number, null, "join me!", null, null);
    }
}
